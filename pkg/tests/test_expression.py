from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from app.core.exceptions import SignatureError, StructuralError
from app.models.calculus import standardize
from app.models.expression import IndexedExpression
from app.models.notation import parse
from app.models.tensor import free

POOL = [
    "phi^m_i psi_j,m",
    "phi^m_m psi_i,j",
    "phi^m_j psi_m,i",
    "psi_m phi^m_i,j",
    "psi_i phi^m_j,m",
    "psi_j phi^m_m,i",
]
I, J = free(0), free(1)


def combination(coefficients):
    total = IndexedExpression.zero((), (I, J))
    for text, value in zip(POOL, coefficients):
        total = total + parse(text, "", "ij").scale(value)
    return total


coefficient_lists = st.lists(
    st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=len(POOL), max_size=len(POOL)
)


@given(coefficient_lists)
def test_difference_with_itself_is_zero(coefficients):
    e = combination(coefficients)
    assert (e - e).is_zero()


@given(coefficient_lists, coefficient_lists)
def test_addition_is_invertible(first, second):
    a, b = combination(first), combination(second)
    assert (a + b) - b == a


@given(coefficient_lists)
def test_free_index_swap_is_an_involution(coefficients):
    e = combination(coefficients)
    swap = {I: J, J: I}
    assert e.rename(swap).rename(swap) == e


@given(coefficient_lists)
@settings(max_examples=30)
def test_standardize_is_idempotent(coefficients):
    e = standardize(combination(coefficients))
    assert standardize(e) == e


@given(coefficient_lists)
@settings(max_examples=30)
def test_alternation_is_a_projection(coefficients):
    e = combination(coefficients)
    once = e.alternate((I, J))
    assert once.alternate((I, J)) == once
    assert e.symmetrize((I, J)).alternate((I, J)).is_zero()


def test_dummy_names_do_not_matter():
    assert parse("phi^m_i psi_j,m", "", "ij") == parse("phi^p_i psi_j,p", "", "ij")
    assert parse("psi_m phi^m_i,j", "", "ij") == parse("psi_q phi^q_i,j", "", "ij")


def test_zero_coefficients_are_not_stored():
    e = parse("phi^m_i psi_j,m - phi^m_i psi_j,m + psi_m phi^m_i,j", "", "ij")
    assert len(e) == 1
    assert e.coefficient(next(iter(e.terms))) == 1


def test_multiply_contracts_opposite_variance():
    product = parse("phi^i_j") * parse("psi_i")
    assert product.valence == (0, 1)
    assert product == parse("phi^m_j psi_m", "", "j")


def test_multiply_rejects_repeated_free_index():
    with pytest.raises(SignatureError):
        parse("psi_i").multiply(parse("psi_i"))


def test_incompatible_sums_are_rejected():
    with pytest.raises(SignatureError):
        parse("psi_i") + parse("psi_j")


def test_differentiate_follows_the_product_rule():
    e = parse("phi^m_i psi_m", "", "i")
    expected = parse("phi^m_i,j psi_m + phi^m_i psi_m,j", "", "ij")
    assert e.differentiate(J) == expected


def test_second_derivatives_are_structural_errors():
    once = parse("phi^m_i psi_m", "", "i").differentiate(J)
    with pytest.raises(StructuralError):
        once.differentiate(free(2))


def test_derivative_index_must_be_fresh():
    with pytest.raises(SignatureError):
        parse("psi_i").differentiate(I)


def test_delta_is_substituted():
    assert parse("delta^m_i psi_m", "", "i") == parse("psi_i")


def test_rename_must_stay_injective():
    with pytest.raises(SignatureError):
        parse("psi_ij", "", "ij").rename({I: J})


def test_scale_by_zero_gives_zero():
    assert parse("psi_ij", "", "ij").scale(Fraction(0)).is_zero()
