"""Linear relations among monomials induced by input symmetries"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple

from app.core.exceptions import InconsistencyError
from app.models.expression import IndexedExpression
from app.models.matrix import Echelon, RationalMatrix, row_space_reduce
from app.models.monomial import Monomial, canonicalize
from app.models.tensor import Factor, Head
from app.schemas.signature import INPUT_CONSTRAINTS, SymmetryConstraint, TensorSignature

Relation = Dict[Monomial, Fraction]

PSI_HEADS = frozenset({Head.PSI, Head.DPSI})
PHI_HEADS = frozenset({Head.PHI, Head.DPHI})


def _replaced(key: Monomial, position: int, factor: Factor) -> Monomial:
    factors = list(key.factors)
    factors[position] = factor
    return canonicalize(factors, key.dim_power)


def _add(relation: Relation, key: Monomial, value: Fraction) -> None:
    total = relation.get(key, Fraction(0)) + value
    if total:
        relation[key] = total
    else:
        relation.pop(key, None)


def swap_relations(key: Monomial, heads: FrozenSet[Head], upper: bool, sign: int) -> List[Relation]:
    """m - sign * m' for every adjacent transposition of a field's base slots"""
    relations = []
    for position, factor in enumerate(key.factors):
        if factor.head not in heads:
            continue
        slots = factor.upper if upper else factor.base_lower
        for a in range(len(slots) - 1):
            swapped = list(slots)
            swapped[a], swapped[a + 1] = swapped[a + 1], swapped[a]
            if upper:
                variant = factor.with_base_indices(tuple(swapped), factor.base_lower)
            else:
                variant = factor.with_base_indices(factor.upper, tuple(swapped))
            relation: Relation = {key: Fraction(1)}
            _add(relation, _replaced(key, position, variant), Fraction(-sign))
            if relation:
                relations.append(relation)
    return relations


def closed_form_relations(key: Monomial) -> List[Relation]:
    """sum_a (-1)^a d_{I_a} psi_{I without a} = 0 at every differentiated form"""
    relations = []
    for position, factor in enumerate(key.factors):
        if factor.head != Head.DPSI:
            continue
        indices = (factor.derivative_index,) + factor.base_lower
        relation: Relation = {}
        for a, index in enumerate(indices):
            rest = indices[:a] + indices[a + 1:]
            variant = Factor(Head.DPSI, factor.upper, rest + (index,), factor.label)
            _add(relation, _replaced(key, position, variant), Fraction((-1) ** a))
        if relation:
            relations.append(relation)
    return relations


def relations_for(
    key: Monomial,
    signature: TensorSignature,
    constraints: Iterable[SymmetryConstraint],
) -> List[Relation]:
    """All generating relations touching one monomial"""
    found = frozenset(constraints)
    psi_upper = signature.psi_r >= 2 and signature.psi_s == 0
    relations: List[Relation] = []
    if SymmetryConstraint.PSI_SYMMETRIC in found:
        relations += swap_relations(key, PSI_HEADS, psi_upper, sign=1)
    if found & {SymmetryConstraint.PSI_ANTISYMMETRIC, SymmetryConstraint.PSI_CLOSED_FORM}:
        relations += swap_relations(key, PSI_HEADS, psi_upper, sign=-1)
    if SymmetryConstraint.PSI_CLOSED_FORM in found:
        relations += closed_form_relations(key)
    if SymmetryConstraint.PHI_ANTISYMMETRIC in found:
        relations += swap_relations(key, PHI_HEADS, False, sign=-1)
    return relations


@dataclass(frozen=True)
class RelationQuotient:
    """Monomials modulo the relations that hold on constrained inputs

    Columns run in descending key order, so each class is represented by its
    smallest surviving monomials.
    """

    keys: Tuple[Monomial, ...]
    echelon: Echelon
    relation_count: int
    constrained: bool

    @classmethod
    def build(
        cls,
        seeds: Iterable[Monomial],
        signature: TensorSignature,
        constraints: Iterable[SymmetryConstraint] = (),
    ) -> "RelationQuotient":
        active = frozenset(constraints) & INPUT_CONSTRAINTS
        seen = set(seeds)
        queue = deque(sorted(seen))
        relations: List[Relation] = []
        while queue:
            key = queue.popleft()
            for relation in relations_for(key, signature, active):
                relations.append(relation)
                for other in relation:
                    if other not in seen:
                        seen.add(other)
                        queue.append(other)
        keys = tuple(sorted(seen, reverse=True))
        index = {key: n for n, key in enumerate(keys)}
        rows = [{index[k]: v for k, v in relation.items()} for relation in relations]
        echelon = RationalMatrix.from_rows(rows, len(keys)).rref()
        return cls(keys, echelon, len(relations), bool(active))

    @property
    def index(self) -> Dict[Monomial, int]:
        return {key: n for n, key in enumerate(self.keys)}

    @property
    def representatives(self) -> Tuple[Monomial, ...]:
        pivots = set(self.echelon.pivots)
        return tuple(sorted(key for n, key in enumerate(self.keys) if n not in pivots))

    def reduce(self, vector: Mapping[Monomial, Fraction]) -> Dict[Monomial, Fraction]:
        """Rewrite a combination of monomials in terms of representatives"""
        if not self.constrained:
            return {key: Fraction(value) for key, value in vector.items() if value}
        index = self.index
        outside = [key for key in vector if key not in index]
        if outside:
            raise InconsistencyError("monomial lies outside the relation closure", {"count": len(outside)})
        residual = row_space_reduce(self.echelon, {index[k]: v for k, v in vector.items()})
        return {self.keys[n]: value for n, value in residual.items()}

    def reduce_expression(self, expression: IndexedExpression) -> IndexedExpression:
        return IndexedExpression(expression.upper, expression.lower, self.reduce(expression.terms))

    def vector(self, expression: IndexedExpression, basis: Sequence[Monomial]) -> List[Fraction]:
        """Coordinates of a reduced expression over the given representatives"""
        reduced = self.reduce(expression.terms)
        position = {key: n for n, key in enumerate(basis)}
        stray = [key for key in reduced if key not in position]
        if stray:
            raise InconsistencyError("reduced expression leaves the representative basis", {"count": len(stray)})
        coordinates = [Fraction(0)] * len(basis)
        for key, value in reduced.items():
            coordinates[position[key]] = value
        return coordinates
