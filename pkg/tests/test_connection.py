import pytest

from app.core.exceptions import StructuralError
from app.models.notation import parse
from app.models.tensor import Head
from app.schemas.signature import SymmetryConstraint
from app.services.ansatz_service import ansatz_service
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
from app.services.classification_service import classification_service
from app.services.connection_service import connection_service


def test_covariantize_adds_one_connection_term_per_slot():
    key = next(iter(parse("phi^m_i psi_j,m", "", "ij").terms))
    covariant = connection_service.covariantize(key)
    connection_terms = [k for k in covariant.terms if k.count(Head.CONN)]
    assert len(covariant) == 2
    assert len(connection_terms) == 1


def test_covariantize_needs_exactly_one_derivative():
    key = next(iter(parse("phi^m_i psi_m", "", "i").terms))
    with pytest.raises(StructuralError):
        connection_service.covariantize(key)


def test_lie_bracket_has_no_connection_part():
    assert connection_service.k_part(catalog_service.expand("lie_bracket")).is_zero()


def test_excluded_monomial_has_a_connection_part():
    assert not connection_service.k_part(catalog_service.expand("nonexample_a2")).is_zero()


def test_vector_field_system_has_rank_three(classified):
    family, system, basis = classified(VECTOR_FIELDS)
    assert system.rank() == 3
    assert basis.dimension == 1
    assert basis.rank + basis.dimension == family.size


@pytest.mark.parametrize("signature, constraints", [
    (VECTOR_FIELDS, ()),
    (VECTOR_ONE_FORM, ()),
    (VECTOR_TWO_TENSOR, ()),
    (TANGENT_ONE_FORM, ()),
    (TANGENT_ONE_FORM, (SymmetryConstraint.PSI_CLOSED_FORM,)),
    pytest.param(TANGENT_TANGENT, (), marks=pytest.mark.slow),
    pytest.param(TANGENT_TWO_TENSOR, (), marks=pytest.mark.slow),
    pytest.param(TWO_TENSOR_ONE_FORM, (), marks=pytest.mark.slow),
    pytest.param(TWO_TENSOR_ONE_FORM, (SymmetryConstraint.PHI_ANTISYMMETRIC,), marks=pytest.mark.slow),
    pytest.param(TANGENT_TANGENT, (SymmetryConstraint.OUTPUT_ALTERNATING,), marks=pytest.mark.slow),
])
def test_sign_convention_does_not_change_the_solutions(signature, constraints):
    _, _, plus = classification_service.classify(signature, constraints, sign=1)
    _, _, minus = classification_service.classify(signature, constraints, sign=-1)
    assert plus.dimension == minus.dimension
    assert plus.vectors == minus.vectors


def test_each_row_comes_from_a_connection_monomial(classified):
    family, system, _ = classified(VECTOR_ONE_FORM)
    assert len(system.rows) == len(system.provenance)
    for key in system.provenance:
        assert key.count(Head.CONN) == 1
    assert set(system.relation(0)) <= set(family.unknowns)


def test_basis_elements_are_sound(classified):
    _, _, basis = classified(TANGENT_ONE_FORM)
    connection_service.check_soundness(basis)


def test_ansatz_monomials_are_not_natural_on_their_own():
    family = ansatz_service.generate(VECTOR_ONE_FORM)
    for key in family.terms:
        assert not connection_service.is_natural(family.monomial_expression(key), VECTOR_ONE_FORM)
