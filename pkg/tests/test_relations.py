from app.models.notation import parse
from app.models.relations import RelationQuotient
from app.schemas.signature import SymmetryConstraint
from app.services.catalog_service import TANGENT_ONE_FORM, TANGENT_TWO_TENSOR, TWO_TENSOR_ONE_FORM, VECTOR_TWO_TENSOR


def quotient_for(expression, signature, *constraints):
    return RelationQuotient.build(expression.terms, signature, constraints)


def test_symmetric_psi_identifies_transposed_slots():
    difference = parse("phi^m psi_ij,m - phi^m psi_ji,m", "", "ij")
    quotient = quotient_for(difference, VECTOR_TWO_TENSOR, SymmetryConstraint.PSI_SYMMETRIC)
    assert quotient.reduce_expression(difference).is_zero()


def test_antisymmetric_psi_flips_sign():
    total = parse("phi^m psi_ij,m + phi^m psi_ji,m", "", "ij")
    quotient = quotient_for(total, VECTOR_TWO_TENSOR, SymmetryConstraint.PSI_ANTISYMMETRIC)
    assert quotient.reduce_expression(total).is_zero()


def test_closed_one_form_has_symmetric_derivative():
    difference = parse("phi^m_m psi_i,j - phi^m_m psi_j,i", "", "ij")
    quotient = quotient_for(difference, TANGENT_ONE_FORM, SymmetryConstraint.PSI_CLOSED_FORM)
    assert quotient.reduce_expression(difference).is_zero()


def test_closed_two_form_satisfies_the_cyclic_identity():
    cyclic = parse("phi^m_m (psi_jk,i + psi_ki,j + psi_ij,k)", "", "ijk")
    quotient = quotient_for(cyclic, TANGENT_TWO_TENSOR, SymmetryConstraint.PSI_CLOSED_FORM)
    assert quotient.reduce_expression(cyclic).is_zero()


def test_tangent_valued_form_is_antisymmetric_in_its_lower_pair():
    total = parse("psi_k (phi^m_ij,m + phi^m_ji,m)", "", "ijk")
    quotient = quotient_for(total, TWO_TENSOR_ONE_FORM, SymmetryConstraint.PHI_ANTISYMMETRIC)
    assert quotient.reduce_expression(total).is_zero()


def test_unconstrained_quotient_changes_nothing():
    e = parse("phi^m psi_ij,m - phi^m psi_ji,m", "", "ij")
    quotient = quotient_for(e, VECTOR_TWO_TENSOR)
    assert not quotient.constrained
    assert quotient.reduce_expression(e) == e


def test_representatives_pick_one_monomial_per_class():
    e = parse("phi^m psi_ij,m + phi^m psi_ji,m", "", "ij")
    quotient = quotient_for(e, VECTOR_TWO_TENSOR, SymmetryConstraint.PSI_SYMMETRIC)
    assert len(quotient.representatives) == 1
