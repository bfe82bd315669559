from fractions import Fraction

import pytest

from app.core.config import settings
from app.core.exceptions import SignatureError
from app.models.jets import DiffeoJet, PolyField
from app.schemas.signature import SymmetryConstraint
from app.services.catalog_service import (
    TANGENT_ONE_FORM,
    TANGENT_TANGENT,
    TANGENT_TWO_TENSOR,
    TWO_TENSOR_ONE_FORM,
    VECTOR_FIELDS,
    VECTOR_ONE_FORM,
    VECTOR_TWO_TENSOR,
    catalog_service,
)
from app.services.jet_service import exterior_derivative, jet_service
from app.tasks.verification import OperatorCheck, check_catalog_operator


def test_lie_bracket_is_natural():
    report = jet_service.check_naturality(
        catalog_service.expand("lie_bracket"), VECTOR_FIELDS, trials=4, dim=2, name="lie_bracket"
    )
    assert report.passed
    assert report.witness is None


def test_excluded_monomial_fails_with_a_witness():
    report = jet_service.check_naturality(catalog_service.expand("nonexample_a2"), VECTOR_FIELDS, trials=4, dim=2)
    assert not report.passed
    assert report.witness is not None
    assert report.witness.expected != report.witness.actual


def test_pure_pairs_make_the_yano_ako_part_natural():
    report = jet_service.check_pure_case(trials=5, dim=3)
    assert report.passed
    assert report.pure
    assert report.trials == 5


@pytest.mark.slow
def test_pure_pairs_pass_the_default_trials():
    report = jet_service.check_pure_case()
    assert report.passed
    assert report.trials == settings.PURE_TRIALS


@pytest.mark.parametrize("signature, constraints", [
    (TANGENT_ONE_FORM, ()),
    (TANGENT_ONE_FORM, (SymmetryConstraint.PSI_CLOSED_FORM,)),
    (VECTOR_TWO_TENSOR, (SymmetryConstraint.PSI_ANTISYMMETRIC,)),
])
def test_classified_basis_passes(classified, signature, constraints):
    _, _, basis = classified(signature, *constraints)
    expressions = {f"basis_{n}": e for n, e in enumerate(basis.expressions, start=1)}
    reports = jet_service.check_basis(expressions, signature, constraints, trials=3, dim=3)
    assert reports
    assert [r.operator for r in reports] == list(expressions)
    assert all(r.passed for r in reports)


def test_identity_jet_leaves_fields_alone(rng):
    phi, _ = jet_service.sample_inputs(TANGENT_ONE_FORM, (), rng, 2)
    origin = [Fraction(0)] * 2
    assert jet_service.pullback(phi, DiffeoJet.identity(2)) == phi.values_at(origin)


def test_closed_one_forms_are_closed(rng):
    _, psi = jet_service.sample_inputs(TANGENT_ONE_FORM, {SymmetryConstraint.PSI_CLOSED_FORM}, rng, 3)
    assert all(not poly for poly in exterior_derivative(psi).components.values())


def test_antisymmetric_phi_components(rng):
    phi, _ = jet_service.sample_inputs(TWO_TENSOR_ONE_FORM, {SymmetryConstraint.PHI_ANTISYMMETRIC}, rng, 2)
    for (a, i, j), poly in phi.components.items():
        assert poly == -phi.components[(a, j, i)]


def test_evaluating_pulled_fields_matches_pulling_back_the_output(rng):
    expression = catalog_service.expand("lie_bracket")
    phi, psi = jet_service.sample_inputs(VECTOR_FIELDS, (), rng, 2)
    jet = DiffeoJet.random(2, rng, 3, conjugated=True)
    output = jet_service.evaluate_field(expression, phi, psi)
    assert jet_service.pullback(output, jet) == jet_service.evaluate(
        expression, jet.pullback(phi), jet.pullback(psi)
    )


def test_field_valence_must_match(rng):
    phi = PolyField.random((1, 1), 2, 1, rng, 3)
    psi = PolyField.random((1, 0), 2, 1, rng, 3)
    with pytest.raises(SignatureError):
        jet_service.evaluate(catalog_service.expand("lie_bracket"), phi, psi)


def test_jet_dimension_must_match(rng):
    field = PolyField.random((1, 0), 3, 1, rng, 3)
    with pytest.raises(SignatureError):
        DiffeoJet.identity(2).pullback(field)


@pytest.mark.slow
@pytest.mark.parametrize("name", catalog_service.names)
def test_numeric_check_agrees_with_the_connection_part(name):
    report = check_catalog_operator(OperatorCheck(name, trials=3, seed=11, dim=3))
    assert report.passed == catalog_service.entry(name).natural


@pytest.mark.slow
@pytest.mark.parametrize("signature, constraints", [
    (VECTOR_FIELDS, ()),
    (VECTOR_ONE_FORM, ()),
    (VECTOR_TWO_TENSOR, ()),
    (TANGENT_TANGENT, ()),
    (TANGENT_ONE_FORM, ()),
    (TANGENT_TWO_TENSOR, ()),
    (TWO_TENSOR_ONE_FORM, ()),
    (TANGENT_ONE_FORM, (SymmetryConstraint.PSI_CLOSED_FORM,)),
    (TWO_TENSOR_ONE_FORM, (SymmetryConstraint.PHI_ANTISYMMETRIC,)),
    (TWO_TENSOR_ONE_FORM, (SymmetryConstraint.PSI_CLOSED_FORM,)),
    (TANGENT_TANGENT, (SymmetryConstraint.OUTPUT_ALTERNATING,)),
])
def test_basis_passes_the_default_trials(classified, signature, constraints):
    _, _, basis = classified(signature, *constraints)
    expressions = {f"basis_{n}": e for n, e in enumerate(basis.expressions, start=1)}
    reports = jet_service.check_basis(expressions, signature, constraints)
    assert len(reports) == basis.dimension
    assert all(r.trials == settings.NATURALITY_TRIALS for r in reports)
    assert [r.operator for r in reports if not r.passed] == []
