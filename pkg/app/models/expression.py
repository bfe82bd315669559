"""Immutable rational linear combinations of canonical monomials"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

from sympy.combinatorics import Permutation

from app.core.exceptions import SignatureError, StructuralError
from app.models.monomial import Monomial, canonicalize, next_dummy, shift_dummies
from app.models.tensor import Factor, Head, IndexName, dummy

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class IndexedExpression:
    """Formal sum of monomials sharing one free-index signature

    upper and lower list the free indices in slot order; terms never store a zero
    coefficient.
    """

    upper: Tuple[IndexName, ...]
    lower: Tuple[IndexName, ...]
    terms: Mapping[Monomial, Fraction] = field(default_factory=dict)

    # Construction

    @classmethod
    def zero(cls, upper: Sequence[IndexName] = (), lower: Sequence[IndexName] = ()) -> "IndexedExpression":
        return cls(tuple(upper), tuple(lower), {})

    @classmethod
    def from_products(
        cls,
        upper: Sequence[IndexName],
        lower: Sequence[IndexName],
        products: Iterable[Tuple[Sequence[Factor], Scalar, int]],
    ) -> "IndexedExpression":
        """Canonicalize and collect (factors, coefficient, dim_power) triples"""
        upper, lower = tuple(upper), tuple(lower)
        collected: Dict[Monomial, Fraction] = {}
        for factors, coefficient, dim_power in products:
            if not coefficient:
                continue
            key = canonicalize(factors, dim_power)
            found_upper, found_lower = key.free_indices()
            if set(found_upper) != set(upper) or set(found_lower) != set(lower):
                raise SignatureError(
                    "term free indices do not match the expression signature",
                    {
                        "expected": _letters(upper, lower),
                        "found": _letters(found_upper, found_lower),
                    },
                )
            collected[key] = collected.get(key, Fraction(0)) + Fraction(coefficient)
        return cls(upper, lower, {key: value for key, value in collected.items() if value})

    @classmethod
    def from_factors(
        cls,
        factors: Sequence[Factor],
        coefficient: Scalar = 1,
        upper: Optional[Sequence[IndexName]] = None,
        lower: Optional[Sequence[IndexName]] = None,
    ) -> "IndexedExpression":
        """Single product; free indices default to ascending order"""
        key = canonicalize(factors)
        found_upper, found_lower = key.free_indices()
        return cls.from_products(
            found_upper if upper is None else upper,
            found_lower if lower is None else lower,
            [(factors, coefficient, 0)],
        )

    # Inspection

    @property
    def valence(self) -> Tuple[int, int]:
        return len(self.upper), len(self.lower)

    @property
    def free_names(self) -> frozenset:
        return frozenset(self.upper) | frozenset(self.lower)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items()))

    def coefficient(self, key: Monomial) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IndexedExpression):
            return NotImplemented
        return (
            set(self.upper) == set(other.upper)
            and set(self.lower) == set(other.lower)
            and dict(self.terms) == dict(other.terms)
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.upper), frozenset(self.lower), frozenset(self.terms.items())))

    # Linear structure

    def _check_compatible(self, other: "IndexedExpression") -> None:
        if set(self.upper) != set(other.upper) or set(self.lower) != set(other.lower):
            raise SignatureError(
                "expressions have different free indices",
                {"left": _letters(self.upper, self.lower), "right": _letters(other.upper, other.lower)},
            )

    def __add__(self, other: "IndexedExpression") -> "IndexedExpression":
        self._check_compatible(other)
        terms = dict(self.terms)
        for key, value in other.terms.items():
            total = terms.get(key, Fraction(0)) + value
            if total:
                terms[key] = total
            else:
                terms.pop(key, None)
        return IndexedExpression(self.upper, self.lower, terms)

    def scale(self, coefficient: Scalar) -> "IndexedExpression":
        coefficient = Fraction(coefficient)
        if not coefficient:
            return IndexedExpression.zero(self.upper, self.lower)
        return IndexedExpression(
            self.upper, self.lower, {key: value * coefficient for key, value in self.terms.items()}
        )

    def __neg__(self) -> "IndexedExpression":
        return self.scale(-1)

    def __sub__(self, other: "IndexedExpression") -> "IndexedExpression":
        return self + (-other)

    def __rmul__(self, coefficient: Scalar) -> "IndexedExpression":
        return self.scale(coefficient)

    def __mul__(self, other: Union["IndexedExpression", Scalar]) -> "IndexedExpression":
        if isinstance(other, IndexedExpression):
            return self.multiply(other)
        return self.scale(other)

    # Index operations

    def map_terms(
        self,
        transform,
        upper: Optional[Sequence[IndexName]] = None,
        lower: Optional[Sequence[IndexName]] = None,
    ) -> "IndexedExpression":
        """Rebuild from transform(monomial) -> iterable of (factors, coefficient, dim_power)"""
        def products():
            for key, value in self.terms.items():
                for factors, coefficient, dim_power in transform(key):
                    yield factors, value * coefficient, dim_power
        return IndexedExpression.from_products(
            self.upper if upper is None else upper,
            self.lower if lower is None else lower,
            products(),
        )

    def rename(self, mapping: Mapping[IndexName, IndexName]) -> "IndexedExpression":
        """Simultaneous renaming of free indices"""
        for source, target in mapping.items():
            if not source.is_free or not target.is_free:
                raise SignatureError("only free indices can be renamed", {"index": source.letter})
        targets = [mapping.get(name, name) for name in self.upper + self.lower]
        if len(set(targets)) != len(targets):
            raise SignatureError("renaming is not injective on free indices")

        def rename(name: IndexName) -> IndexName:
            return mapping.get(name, name)

        return self.map_terms(
            lambda key: [(tuple(f.renamed(rename) for f in key.factors), 1, key.dim_power)],
            upper=tuple(rename(name) for name in self.upper),
            lower=tuple(rename(name) for name in self.lower),
        )

    def multiply(self, other: "IndexedExpression") -> "IndexedExpression":
        """Tensor product; a free index shared with opposite variance is contracted"""
        contract_down = set(self.upper) & set(other.lower)
        contract_up = set(self.lower) & set(other.upper)
        clashes = (set(self.upper) & set(other.upper)) | (set(self.lower) & set(other.lower))
        if clashes:
            raise SignatureError(
                "repeated free index with equal variance",
                {"indices": "".join(sorted(name.letter for name in clashes))},
            )
        shared = sorted(contract_down | contract_up)
        upper = tuple(n for n in self.upper if n not in shared) + tuple(n for n in other.upper if n not in shared)
        lower = tuple(n for n in self.lower if n not in shared) + tuple(n for n in other.lower if n not in shared)

        def products():
            for left, a in self.terms.items():
                offset = next_dummy(left.factors)
                for right, b in other.terms.items():
                    shifted = shift_dummies(right, offset)
                    start = next_dummy(left.factors + shifted)
                    bind = {name: dummy(start + n) for n, name in enumerate(shared)}
                    factors = tuple(
                        f.renamed(lambda name: bind.get(name, name)) for f in left.factors + shifted
                    )
                    yield factors, a * b, left.dim_power + right.dim_power

        return IndexedExpression.from_products(upper, lower, products())

    def contract(self, upper: IndexName, lower: IndexName) -> "IndexedExpression":
        """Trace over one free upper and one free lower index"""
        if upper not in self.upper or lower not in self.lower:
            raise SignatureError(
                "contraction needs a free upper and a free lower index",
                {"upper": upper.letter, "lower": lower.letter},
            )

        def transform(key: Monomial):
            bound = dummy(next_dummy(key.factors))
            swap = {upper: bound, lower: bound}
            return [(tuple(f.renamed(lambda n: swap.get(n, n)) for f in key.factors), 1, key.dim_power)]

        return self.map_terms(
            transform,
            upper=tuple(n for n in self.upper if n != upper),
            lower=tuple(n for n in self.lower if n != lower),
        )

    def differentiate(self, index: IndexName) -> "IndexedExpression":
        """Partial derivative along a new free lower index, by the product rule"""
        if not index.is_free or index in self.free_names:
            raise SignatureError("derivative index must be a fresh free index", {"index": index.letter})

        def transform(key: Monomial):
            for position, factor in enumerate(key.factors):
                if factor.head == Head.DELTA:
                    continue
                if factor.head == Head.CONN or factor.is_derivative:
                    raise StructuralError(
                        "second derivatives are outside the first-order fragment",
                        {"head": factor.head.name},
                    )
                factors = list(key.factors)
                factors[position] = factor.differentiated(index)
                yield tuple(factors), 1, key.dim_power

        return self.map_terms(lambda key: list(transform(key)), lower=self.lower + (index,))

    def _permuted(self, names: Sequence[IndexName], signed: bool) -> "IndexedExpression":
        names = tuple(names)
        in_upper = all(name in self.upper for name in names)
        in_lower = all(name in self.lower for name in names)
        if not names or not (in_upper or in_lower):
            raise SignatureError(
                "symmetrization needs free indices of one variance",
                {"indices": "".join(name.letter for name in names)},
            )
        weight = Fraction(1, factorial(len(names)))
        total = IndexedExpression.zero(self.upper, self.lower)
        for order in permutations(range(len(names))):
            sign = Permutation(list(order)).signature() if signed else 1
            mapping = {names[n]: names[order[n]] for n in range(len(names))}
            total = total + self.rename(mapping).scale(weight * sign)
        return total

    def symmetrize(self, names: Sequence[IndexName]) -> "IndexedExpression":
        """Average over all permutations of the named free indices"""
        return self._permuted(names, signed=False)

    def alternate(self, names: Sequence[IndexName]) -> "IndexedExpression":
        """Signed average over all permutations of the named free indices"""
        return self._permuted(names, signed=True)

    def substitute_delta(self) -> "IndexedExpression":
        """Resolve delta contractions; stored terms are already resolved"""
        return self.map_terms(lambda key: [(key.factors, 1, key.dim_power)])

    def has_dim(self) -> bool:
        return any(key.dim_power for key in self.terms)


def _letters(upper: Sequence[IndexName], lower: Sequence[IndexName]) -> str:
    return "^" + "".join(name.letter for name in upper) + "_" + "".join(name.letter for name in lower)
