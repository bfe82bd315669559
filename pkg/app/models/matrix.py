"""Exact sparse linear algebra over the rationals"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from app.core.exceptions import InconsistencyError

SparseRow = Dict[int, Fraction]


def _integral(row: Mapping[int, Fraction]) -> Dict[int, int]:
    """Scale a rational row to a primitive integer row"""
    entries = {col: Fraction(value) for col, value in row.items() if value}
    if not entries:
        return {}
    scale = reduce(lcm, (value.denominator for value in entries.values()), 1)
    ints = {col: int(value * scale) for col, value in entries.items()}
    return _primitive(ints)


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    common = reduce(gcd, (abs(value) for value in row.values()), 0)
    if common > 1:
        return {col: value // common for col, value in row.items()}
    return row


def _combine(row: Dict[int, int], pivot: int, pivot_row: Dict[int, int], factor: int) -> Dict[int, int]:
    """pivot * row - factor * pivot_row, fraction free"""
    result = {col: value * pivot for col, value in row.items()}
    for col, value in pivot_row.items():
        total = result.get(col, 0) - factor * value
        if total:
            result[col] = total
        else:
            result.pop(col, None)
    return result


class Echelon(NamedTuple):
    """Reduced row echelon form with its pivot columns"""
    matrix: "RationalMatrix"
    rank: int
    pivots: Tuple[int, ...]


class Membership(NamedTuple):
    """Coordinates of a vector in a basis, or the residual left after reduction"""
    coordinates: Optional[List[Fraction]]
    residual: SparseRow

    @property
    def in_span(self) -> bool:
        return self.coordinates is not None


@dataclass(frozen=True)
class RationalMatrix:
    """Sparse matrix of exact rationals; zero entries are never stored"""

    rows: int
    cols: int
    entries: Mapping[Tuple[int, int], Fraction] = field(default_factory=dict)

    @classmethod
    def from_rows(cls, rows: Sequence[Mapping[int, Fraction]], cols: int) -> "RationalMatrix":
        entries = {}
        for r, row in enumerate(rows):
            for c, value in row.items():
                if not 0 <= c < cols:
                    raise InconsistencyError("column out of range", {"column": c, "cols": cols})
                if value:
                    entries[(r, c)] = Fraction(value)
        return cls(len(rows), cols, entries)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Fraction]]) -> "RationalMatrix":
        cols = len(rows[0]) if rows else 0
        return cls.from_rows([{c: v for c, v in enumerate(row) if v} for row in rows], cols)

    @classmethod
    def identity(cls, size: int) -> "RationalMatrix":
        return cls(size, size, {(n, n): Fraction(1) for n in range(size)})

    def row(self, r: int) -> SparseRow:
        return {c: v for (rr, c), v in self.entries.items() if rr == r}

    def sparse_rows(self) -> List[SparseRow]:
        rows: List[SparseRow] = [dict() for _ in range(self.rows)]
        for (r, c), value in self.entries.items():
            rows[r][c] = value
        return rows

    def dense(self) -> List[List[Fraction]]:
        table = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), value in self.entries.items():
            table[r][c] = value
        return table

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def apply(self, vector: Sequence[Fraction]) -> List[Fraction]:
        """Matrix times dense column vector"""
        result = [Fraction(0)] * self.rows
        for (r, c), value in self.entries.items():
            result[r] += value * vector[c]
        return result

    def rref(self) -> Echelon:
        """Fraction-free forward elimination, then normalization and back substitution

        Pivots are chosen leftmost first, then from the lowest remaining row.
        """
        remaining = [row for row in (_integral(r) for r in self.sparse_rows()) if row]
        reduced: List[Dict[int, int]] = []
        pivots: List[int] = []
        for col in range(self.cols):
            if not remaining:
                break
            pick = next((n for n, row in enumerate(remaining) if col in row), None)
            if pick is None:
                continue
            pivot_row = remaining.pop(pick)
            pivot = pivot_row[col]
            survivors = []
            for row in remaining:
                factor = row.get(col)
                if factor:
                    row = _combine(row, pivot, pivot_row, factor)
                    row = _primitive(row) if row else row
                if row:
                    survivors.append(row)
            remaining = survivors
            reduced.append(pivot_row)
            pivots.append(col)

        normal: List[SparseRow] = []
        for row, col in zip(reduced, pivots):
            pivot = Fraction(row[col])
            normal.append({c: Fraction(v) / pivot for c, v in row.items()})
        for i in range(len(normal) - 1, -1, -1):
            col = pivots[i]
            for j in range(i):
                factor = normal[j].get(col)
                if not factor:
                    continue
                for c, v in normal[i].items():
                    total = normal[j].get(c, Fraction(0)) - factor * v
                    if total:
                        normal[j][c] = total
                    else:
                        normal[j].pop(c, None)
        return Echelon(RationalMatrix.from_rows(normal, self.cols), len(pivots), tuple(pivots))

    def rank(self) -> int:
        return self.rref().rank

    def nullspace(self) -> List[List[Fraction]]:
        """Basis with free variables set to unit vectors, in column order"""
        echelon = self.rref()
        rows = echelon.matrix.sparse_rows()
        pivot_set = set(echelon.pivots)
        basis = []
        for free_col in range(self.cols):
            if free_col in pivot_set:
                continue
            vector = [Fraction(0)] * self.cols
            vector[free_col] = Fraction(1)
            for row, pivot in zip(rows, echelon.pivots):
                vector[pivot] = -row.get(free_col, Fraction(0))
            basis.append(vector)
        return basis

    def inverse(self) -> "RationalMatrix":
        if self.rows != self.cols:
            raise InconsistencyError("only square matrices can be inverted", {"shape": (self.rows, self.cols)})
        size = self.rows
        augmented = [
            {**row, **{size + n: Fraction(1)}}
            for n, row in enumerate(self.sparse_rows())
        ]
        echelon = RationalMatrix.from_rows(augmented, 2 * size).rref()
        if echelon.pivots[:size] != tuple(range(size)) or echelon.rank < size:
            raise InconsistencyError("matrix is singular", {"rank": echelon.rank})
        rows = echelon.matrix.sparse_rows()[:size]
        return RationalMatrix.from_rows(
            [{c - size: v for c, v in row.items() if c >= size} for row in rows], size
        )


def row_space_reduce(echelon: Echelon, vector: Mapping[int, Fraction]) -> SparseRow:
    """Residual of a vector after subtracting its component in the row space"""
    residual = {c: Fraction(v) for c, v in vector.items() if v}
    for row, pivot in zip(echelon.matrix.sparse_rows(), echelon.pivots):
        factor = residual.get(pivot)
        if not factor:
            continue
        for c, v in row.items():
            total = residual.get(c, Fraction(0)) - factor * v
            if total:
                residual[c] = total
            else:
                residual.pop(c, None)
    return residual


def solve_membership(vector: Sequence[Fraction], basis: Sequence[Sequence[Fraction]]) -> Membership:
    """Exact coordinates of vector in the span of basis, or a residual witness"""
    size = len(vector)
    sparse_vector = {c: Fraction(v) for c, v in enumerate(vector) if v}
    if not basis:
        return Membership([] if not sparse_vector else None, sparse_vector)
    rows_echelon = RationalMatrix.from_rows(
        [{c: Fraction(v) for c, v in enumerate(b) if v} for b in basis], size
    ).rref()
    residual = row_space_reduce(rows_echelon, sparse_vector)
    if residual:
        return Membership(None, residual)
    # columns are basis vectors, last column is the target
    count = len(basis)
    equations = []
    for c in range(size):
        row = {n: Fraction(b[c]) for n, b in enumerate(basis) if b[c]}
        if vector[c]:
            row[count] = Fraction(vector[c])
        if row:
            equations.append(row)
    echelon = RationalMatrix.from_rows(equations, count + 1).rref()
    coordinates = [Fraction(0)] * count
    for row, pivot in zip(echelon.matrix.sparse_rows(), echelon.pivots):
        coordinates[pivot] = row.get(count, Fraction(0))
    return Membership(coordinates, {})
