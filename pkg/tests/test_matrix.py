from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given

from app.core.exceptions import InconsistencyError
from app.models.matrix import RationalMatrix, solve_membership

small = st.integers(min_value=-3, max_value=3)
shapes = st.tuples(st.integers(min_value=1, max_value=5), st.integers(min_value=1, max_value=6))


@st.composite
def matrices(draw):
    rows, cols = draw(shapes)
    dense = [[Fraction(draw(small)) for _ in range(cols)] for _ in range(rows)]
    return RationalMatrix.from_dense(dense)


@given(matrices())
def test_rank_plus_nullity_is_column_count(matrix):
    assert matrix.rank() + len(matrix.nullspace()) == matrix.cols
    assert matrix.rank() <= min(matrix.rows, matrix.cols)


@given(matrices())
def test_nullspace_vectors_solve_the_system(matrix):
    for vector in matrix.nullspace():
        assert not any(matrix.apply(vector))


@given(matrices())
def test_rref_is_stable(matrix):
    echelon = matrix.rref()
    again = echelon.matrix.rref()
    assert again.pivots == echelon.pivots
    assert again.matrix.dense() == echelon.matrix.dense()
    for row, pivot in zip(echelon.matrix.sparse_rows(), echelon.pivots):
        assert row[pivot] == 1
        assert min(row) == pivot


@given(matrices(), st.data())
def test_membership_recovers_coordinates(matrix, data):
    basis = matrix.nullspace()
    weights = [Fraction(data.draw(small)) for _ in basis]
    vector = [sum((w * b[c] for w, b in zip(weights, basis)), Fraction(0)) for c in range(matrix.cols)]
    membership = solve_membership(vector, basis)
    assert membership.in_span
    assert membership.coordinates == weights


def test_membership_reports_a_residual():
    basis = [[Fraction(1), Fraction(0), Fraction(0)]]
    membership = solve_membership([Fraction(1), Fraction(2), Fraction(0)], basis)
    assert not membership.in_span
    assert membership.residual == {1: Fraction(2)}


def test_inverse_undoes_the_matrix():
    matrix = RationalMatrix.from_dense([[2, 1, 0], [0, 1, 3], [1, 0, 1]])
    inverse = matrix.inverse()
    for unit in ([1, 0, 0], [0, 1, 0], [0, 0, 1]):
        assert inverse.apply(matrix.apply([Fraction(v) for v in unit])) == [Fraction(v) for v in unit]


def test_singular_matrix_has_no_inverse():
    with pytest.raises(InconsistencyError):
        RationalMatrix.from_dense([[1, 2], [2, 4]]).inverse()


def test_zero_entries_are_not_stored():
    matrix = RationalMatrix.from_dense([[0, 1], [0, 0]])
    assert matrix.entries == {(0, 1): Fraction(1)}
