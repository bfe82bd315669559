"""Bilinear first-order ansatz families"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import permutations
from typing import Dict, FrozenSet, Iterator, List, Mapping, Sequence, Tuple

from app.core.exceptions import SignatureError
from app.models.expression import IndexedExpression
from app.models.monomial import Monomial, canonicalize
from app.models.tensor import Factor, Head, IndexName, delta, dummy, free
from app.schemas.signature import SymmetryConstraint, TensorSignature


class Shape(str, Enum):
    """Which input carries the derivative"""
    PHI_DPSI = "a"
    PSI_DPHI = "b"


def output_indices(signature: TensorSignature) -> Tuple[Tuple[IndexName, ...], Tuple[IndexName, ...]]:
    """Standard free indices of the output: uppers first, then lowers"""
    r = signature.out_contra
    upper = tuple(free(n) for n in range(r))
    lower = tuple(free(r + n) for n in range(signature.out_cov))
    return upper, lower


def _factor_slots(signature: TensorSignature, shape: Shape) -> List[Tuple[Head, int, int]]:
    """(head, uppers, lowers including the derivative slot) per factor"""
    p, r, s = signature.phi_p, signature.psi_r, signature.psi_s
    if shape == Shape.PHI_DPSI:
        return [(Head.PHI, 1, p), (Head.DPSI, r, s + 1)]
    return [(Head.PSI, r, s), (Head.DPHI, 1, p + 1)]


def matching_terms(signature: TensorSignature, shape: Shape) -> Iterator[Monomial]:
    """One monomial per bijection between upper-type and lower-type slots

    Upper-type slots are the factor uppers and the output lowers; lower-type slots
    are the factor lowers and the output uppers. A pair of factor slots becomes a
    summed index, a factor slot paired with an output slot carries that free index,
    and two output slots produce a delta.
    """
    out_upper, out_lower = output_indices(signature)
    slots = _factor_slots(signature, shape)
    factor_up = [(n, k) for n, (_, ups, _) in enumerate(slots) for k in range(ups)]
    factor_low = [(n, k) for n, (_, _, lows) in enumerate(slots) for k in range(lows)]
    sources = [("factor", slot) for slot in factor_up] + [("output", name) for name in out_lower]
    targets = [("factor", slot) for slot in factor_low] + [("output", name) for name in out_upper]
    if len(sources) != len(targets):
        raise SignatureError("slot counts do not match", {"signature": signature.label})

    for order in permutations(range(len(targets))):
        up_names: Dict[Tuple[int, int], IndexName] = {}
        low_names: Dict[Tuple[int, int], IndexName] = {}
        extra: List[Factor] = []
        summed = 0
        for (source_kind, source), target_index in zip(sources, order):
            target_kind, target = targets[target_index]
            if source_kind == "factor" and target_kind == "factor":
                up_names[source] = low_names[target] = dummy(summed)
                summed += 1
            elif source_kind == "factor":
                up_names[source] = target
            elif target_kind == "factor":
                low_names[target] = source
            else:
                extra.append(delta(target, source))
        factors = [
            Factor(
                head,
                tuple(up_names[(n, k)] for k in range(ups)),
                tuple(low_names[(n, k)] for k in range(lows)),
            ).normalized()
            for n, (head, ups, lows) in enumerate(slots)
        ]
        yield canonicalize(factors + extra)


@dataclass(frozen=True)
class AnsatzFamily:
    """Ordered unknown monomials of both shapes

    Ids are those of the unconstrained family, so a constrained family keeps the
    labels of its representatives.
    """

    signature: TensorSignature
    a_terms: Tuple[Monomial, ...]
    b_terms: Tuple[Monomial, ...]
    a_ids: Tuple[str, ...]
    b_ids: Tuple[str, ...]
    constraints: FrozenSet[SymmetryConstraint] = frozenset()
    alignment: Mapping[str, str] = field(default_factory=dict)

    @property
    def terms(self) -> Tuple[Monomial, ...]:
        return self.a_terms + self.b_terms

    @property
    def unknowns(self) -> Tuple[str, ...]:
        return self.a_ids + self.b_ids

    @property
    def size(self) -> int:
        return len(self.a_terms) + len(self.b_terms)

    @property
    def output(self) -> Tuple[Tuple[IndexName, ...], Tuple[IndexName, ...]]:
        return output_indices(self.signature)

    def term(self, unknown: str) -> Monomial:
        return dict(zip(self.unknowns, self.terms))[unknown]

    def monomial_expression(self, key: Monomial) -> IndexedExpression:
        upper, lower = self.output
        return IndexedExpression(upper, lower, {key: Fraction(1)})

    def expression(self, coefficients: Sequence[Fraction]) -> IndexedExpression:
        """The operator sum_n coefficients[n] * terms[n]"""
        if len(coefficients) != self.size:
            raise SignatureError(
                "one coefficient per unknown is required",
                {"unknowns": self.size, "given": len(coefficients)},
            )
        upper, lower = self.output
        terms = {key: Fraction(c) for key, c in zip(self.terms, coefficients) if c}
        return IndexedExpression(upper, lower, terms)
