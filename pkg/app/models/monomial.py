"""Canonical monomials: delta resolution and dummy renaming"""

from collections import defaultdict
from itertools import permutations
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple

from app.core.exceptions import StructuralError
from app.models.tensor import Factor, Head, IndexKind, IndexName, dummy


class Monomial(NamedTuple):
    """Coefficient-free product of factors; dim_power counts full delta traces"""
    factors: Tuple[Factor, ...]
    dim_power: int = 0

    @property
    def dummies(self) -> List[IndexName]:
        return sorted({
            name for factor in self.factors for name, _ in factor.indices()
            if name.kind == IndexKind.DUMMY
        })

    def free_indices(self) -> Tuple[List[IndexName], List[IndexName]]:
        """Free (upper, lower) indices in ascending order"""
        upper, lower = set(), set()
        for factor in self.factors:
            for name, is_upper in factor.indices():
                if name.is_free:
                    (upper if is_upper else lower).add(name)
        return sorted(upper), sorted(lower)

    def heads(self) -> List[Head]:
        return [factor.head for factor in self.factors]

    def count(self, *heads: Head) -> int:
        return sum(1 for factor in self.factors if factor.head in heads)


def index_census(factors: Iterable[Factor]) -> Dict[IndexName, List[int]]:
    """Map each index to its [upper, lower] occurrence counts"""
    census: Dict[IndexName, List[int]] = defaultdict(lambda: [0, 0])
    for factor in factors:
        for name, is_upper in factor.indices():
            census[name][0 if is_upper else 1] += 1
    return census


def validate(factors: Sequence[Factor]) -> None:
    """Check the index discipline of a product"""
    for name, (up, low) in index_census(factors).items():
        if name.kind == IndexKind.DUMMY and (up, low) != (1, 1):
            raise StructuralError(
                "dummy index must appear once upper and once lower",
                {"index": name.letter, "upper": up, "lower": low},
            )
        if name.kind == IndexKind.FREE and up + low != 1:
            raise StructuralError(
                "free index must appear exactly once",
                {"index": name.letter, "occurrences": up + low},
            )


def _replace_index(factors: List[Factor], old: IndexName, new: IndexName, upper: bool) -> None:
    for position, factor in enumerate(factors):
        slots = factor.upper if upper else factor.lower
        if old in slots:
            replaced = tuple(new if name == old else name for name in slots)
            if upper:
                factors[position] = Factor(factor.head, replaced, factor.lower, factor.label).normalized()
            else:
                factors[position] = Factor(factor.head, factor.upper, replaced, factor.label).normalized()
            return
    raise StructuralError("contracted index has no partner", {"index": old.letter})


def substitute_delta(factors: Sequence[Factor], dim_power: int = 0) -> Tuple[Tuple[Factor, ...], int]:
    """Eliminate every delta carrying a dummy index; a full trace becomes a power of dim"""
    work = list(factors)
    while True:
        position = next(
            (
                n for n, factor in enumerate(work)
                if factor.head == Head.DELTA
                and (not factor.upper[0].is_free or not factor.lower[0].is_free)
            ),
            None,
        )
        if position is None:
            return tuple(work), dim_power
        factor = work.pop(position)
        up, low = factor.upper[0], factor.lower[0]
        if up == low:
            dim_power += 1
        elif not up.is_free:
            # the partner of an upper dummy sits in a lower slot
            _replace_index(work, up, low, upper=False)
        else:
            _replace_index(work, low, up, upper=True)


def _relabelled(factors: Sequence[Factor], mapping: Dict[IndexName, IndexName]) -> Tuple[Factor, ...]:
    return tuple(sorted(factor.renamed(lambda name: mapping.get(name, name)) for factor in factors))


def canonicalize(factors: Sequence[Factor], dim_power: int = 0) -> Monomial:
    """Unique representative under delta resolution, dummy renaming and factor ordering"""
    validate(factors)
    resolved, dim_power = substitute_delta(factors, dim_power)
    names = sorted({
        name for factor in resolved for name, _ in factor.indices()
        if name.kind == IndexKind.DUMMY
    })
    if not names:
        return Monomial(tuple(sorted(factor.normalized() for factor in resolved)), dim_power)
    best = None
    for order in permutations(range(len(names))):
        mapping = {name: dummy(target) for name, target in zip(names, order)}
        candidate = _relabelled(resolved, mapping)
        if best is None or candidate < best:
            best = candidate
    return Monomial(best, dim_power)


def shift_dummies(monomial: Monomial, offset: int) -> Tuple[Factor, ...]:
    """Factors with every dummy ordinal moved up by offset"""
    def shift(name: IndexName) -> IndexName:
        if name.kind == IndexKind.DUMMY:
            return dummy(name.ordinal + offset)
        return name
    return tuple(factor.renamed(shift) for factor in monomial.factors)


def next_dummy(factors: Iterable[Factor]) -> int:
    """Smallest dummy ordinal not used by the factors"""
    used = [
        name.ordinal for factor in factors for name, _ in factor.indices()
        if name.kind == IndexKind.DUMMY
    ]
    return max(used) + 1 if used else 0
