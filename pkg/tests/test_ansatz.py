import pytest

from app.core.exceptions import SignatureError
from app.models.ansatz import Shape
from app.models.notation import format_monomial, parse
from app.schemas.signature import SymmetryConstraint, TensorSignature, check_constraints
from app.services.ansatz_service import ansatz_service
from app.services.catalog_service import (
    TANGENT_ONE_FORM,
    TANGENT_TANGENT,
    TANGENT_TWO_TENSOR,
    TWO_TENSOR_ONE_FORM,
    VECTOR_FIELDS,
    VECTOR_ONE_FORM,
    VECTOR_TWO_TENSOR,
)
from app.services.fixture_service import listing_monomial


@pytest.mark.parametrize("signature, size", [
    (VECTOR_FIELDS, 4),
    (VECTOR_ONE_FORM, 4),
    (VECTOR_TWO_TENSOR, 12),
    (TANGENT_ONE_FORM, 12),
    (TANGENT_TANGENT, 48),
    (TANGENT_TWO_TENSOR, 48),
    (TWO_TENSOR_ONE_FORM, 48),
])
def test_ansatz_size_is_twice_the_slot_matchings(signature, size):
    family = ansatz_service.generate(signature)
    assert family.size == size
    assert len(family.a_terms) == len(family.b_terms) == size // 2
    assert len(set(family.terms)) == size


def test_unknowns_are_numbered_per_shape():
    family = ansatz_service.generate(VECTOR_FIELDS)
    assert family.unknowns == ("a1", "a2", "b1", "b2")
    assert ansatz_service.shape_of(family.term("a1")) == Shape.PHI_DPSI
    assert ansatz_service.shape_of(family.term("b2")) == Shape.PSI_DPHI


def test_vector_field_monomials():
    family = ansatz_service.generate(VECTOR_FIELDS)
    expected = {
        listing_monomial(text, VECTOR_FIELDS)
        for text in ("phi^m psi^i,m", "phi^i psi^m,m", "psi^m phi^i,m", "psi^i phi^m,m")
    }
    assert set(family.terms) == expected


def test_symmetric_psi_halves_the_family():
    family = ansatz_service.apply_symmetry(
        ansatz_service.generate(VECTOR_TWO_TENSOR), {SymmetryConstraint.PSI_SYMMETRIC}
    )
    assert family.size == 6
    assert SymmetryConstraint.PSI_SYMMETRIC in family.constraints


def test_output_alternation_keeps_every_monomial():
    family = ansatz_service.apply_symmetry(
        ansatz_service.generate(TANGENT_ONE_FORM), {SymmetryConstraint.OUTPUT_ALTERNATING}
    )
    assert family.size == 12


def test_alignment_attaches_listing_labels():
    family = ansatz_service.generate(VECTOR_ONE_FORM)
    listing = {"a1": listing_monomial("phi^m psi_i,m", VECTOR_ONE_FORM)}
    aligned = ansatz_service.aligned(family, listing)
    unknown = dict(zip(family.terms, family.unknowns))[listing["a1"]]
    assert aligned.alignment == {unknown: "a1"}


def test_family_expression_sums_weighted_monomials():
    family = ansatz_service.generate(VECTOR_ONE_FORM)
    coefficients = [1] + [0] * (family.size - 1)
    expression = family.expression(coefficients)
    assert expression == family.monomial_expression(family.terms[0])
    assert expression == parse(format_monomial(family.terms[0], "ascii"), "", "i")


@pytest.mark.parametrize("signature, constraints", [
    (VECTOR_ONE_FORM, {SymmetryConstraint.PSI_SYMMETRIC}),
    (VECTOR_FIELDS, {SymmetryConstraint.PSI_CLOSED_FORM}),
    (TANGENT_ONE_FORM, {SymmetryConstraint.PHI_ANTISYMMETRIC}),
    (VECTOR_FIELDS, {SymmetryConstraint.OUTPUT_ALTERNATING}),
    (VECTOR_TWO_TENSOR, {SymmetryConstraint.PSI_SYMMETRIC, SymmetryConstraint.PSI_ANTISYMMETRIC}),
])
def test_incompatible_constraints_are_rejected(signature, constraints):
    with pytest.raises(SignatureError):
        check_constraints(signature, constraints)


def test_signature_label():
    assert TensorSignature(phi_p=1, psi_r=0, psi_s=2).label == "(1,1)x(0,2)->(0,3)"
