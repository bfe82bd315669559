"""Constraint systems and their solution bases"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from app.models.ansatz import AnsatzFamily
from app.models.expression import IndexedExpression
from app.models.matrix import RationalMatrix
from app.models.monomial import Monomial


@dataclass(frozen=True)
class ConstraintSystem:
    """Homogeneous linear system in the ansatz unknowns

    Row n is the coefficient of the connection monomial provenance[n].
    """

    unknowns: Tuple[str, ...]
    rows: Tuple[Dict[int, Fraction], ...]
    provenance: Tuple[Monomial, ...]

    @property
    def matrix(self) -> RationalMatrix:
        return RationalMatrix.from_rows(list(self.rows), len(self.unknowns))

    def rank(self) -> int:
        return self.matrix.rank()

    def relation(self, row: int) -> Dict[str, Fraction]:
        """One row as unknown id -> coefficient"""
        return {self.unknowns[c]: v for c, v in sorted(self.rows[row].items())}


@dataclass(frozen=True)
class OperatorBasis:
    """Nullspace of a constraint system, mapped back to operators"""

    family: AnsatzFamily
    vectors: Tuple[Tuple[Fraction, ...], ...]
    rank: int
    alternated: bool = False

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    @property
    def expressions(self) -> List[IndexedExpression]:
        return [self.family.expression(vector) for vector in self.vectors]

    def coefficients(self, n: int) -> Dict[str, Fraction]:
        return {u: c for u, c in zip(self.family.unknowns, self.vectors[n]) if c}
