"""Polynomial tensor fields and 2-jets of diffeomorphisms on one chart"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, List, Mapping, Sequence, Tuple

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing, ring

from app.core.exceptions import SignatureError
from app.models.expression import IndexedExpression
from app.models.matrix import RationalMatrix
from app.models.tensor import Head, IndexName

Component = Tuple[int, ...]
Table = Dict[Component, Fraction]


@lru_cache(maxsize=None)
def polynomial_ring(dim: int) -> Tuple[PolyRing, Tuple[PolyElement, ...]]:
    """QQ[x0, ..., x(dim-1)]"""
    poly_ring, *gens = ring(",".join(f"x{n}" for n in range(dim)), QQ)
    return poly_ring, tuple(gens)


def to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def to_domain(value: Fraction):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def truncate(poly: PolyElement, degree: int) -> PolyElement:
    """Drop every term of total degree above the bound"""
    return poly.ring.from_dict({m: c for m, c in poly.items() if sum(m) <= degree})


def exponents(dim: int, degree: int) -> List[Tuple[int, ...]]:
    return [e for e in product(range(degree + 1), repeat=dim) if sum(e) <= degree]


def random_polynomial(dim: int, degree: int, rng: np.random.Generator, bound: int) -> PolyElement:
    poly_ring, _ = polynomial_ring(dim)
    monomials = exponents(dim, degree)
    coefficients = rng.integers(-bound, bound + 1, size=len(monomials))
    return poly_ring.from_dict({m: QQ(int(c)) for m, c in zip(monomials, coefficients) if c})


@dataclass(frozen=True)
class PolyField:
    """Tensor field of valence (r, s) with polynomial components"""

    valence: Tuple[int, int]
    dim: int
    components: Mapping[Component, PolyElement]

    @property
    def rank(self) -> int:
        return sum(self.valence)

    @property
    def ring(self) -> PolyRing:
        return polynomial_ring(self.dim)[0]

    @classmethod
    def build(cls, valence: Tuple[int, int], dim: int, component: Callable[[Component], PolyElement]) -> "PolyField":
        return cls(
            valence,
            dim,
            {index: component(index) for index in product(range(dim), repeat=sum(valence))},
        )

    @classmethod
    def random(
        cls,
        valence: Tuple[int, int],
        dim: int,
        degree: int,
        rng: np.random.Generator,
        bound: int,
    ) -> "PolyField":
        return cls.build(valence, dim, lambda _: random_polynomial(dim, degree, rng, bound))

    @classmethod
    def scaled_identity(cls, function: PolyElement, dim: int) -> "PolyField":
        """f times the identity endomorphism"""
        zero = polynomial_ring(dim)[0].zero
        return cls.build((1, 1), dim, lambda index: function if index[0] == index[1] else zero)

    def values_at(self, point: Sequence[Fraction]) -> Table:
        args = [to_domain(x) for x in point]
        return {index: to_fraction(poly(*args)) for index, poly in self.components.items()}

    def derivatives_at(self, point: Sequence[Fraction]) -> Table:
        """Components of the partial derivative, derivative index last"""
        _, gens = polynomial_ring(self.dim)
        args = [to_domain(x) for x in point]
        return {
            index + (d,): to_fraction(poly.diff(gens[d])(*args))
            for index, poly in self.components.items()
            for d in range(self.dim)
        }

    def truncated(self, degree: int) -> "PolyField":
        return PolyField(self.valence, self.dim, {i: truncate(p, degree) for i, p in self.components.items()})


@dataclass(frozen=True)
class DiffeoJet:
    """f(x) = A x + 1/2 Q(x, x) around the origin, Q symmetric in its lower pair"""

    dim: int
    linear: Tuple[Tuple[Fraction, ...], ...]
    quadratic: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]

    @classmethod
    def identity(cls, dim: int) -> "DiffeoJet":
        linear = tuple(tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim))
        zero = tuple(tuple(tuple(Fraction(0) for _ in range(dim)) for _ in range(dim)) for _ in range(dim))
        return cls(dim, linear, zero)

    @classmethod
    def random(cls, dim: int, rng: np.random.Generator, bound: int, conjugated: bool = False) -> "DiffeoJet":
        """Random symmetric Q; a random invertible A when conjugated, else the identity"""
        raw = rng.integers(-bound, bound + 1, size=(dim, dim, dim))
        quadratic = tuple(
            tuple(tuple(Fraction(int(raw[i][min(j, k)][max(j, k)])) for k in range(dim)) for j in range(dim))
            for i in range(dim)
        )
        linear = cls.identity(dim).linear
        while conjugated:
            sample = rng.integers(-bound, bound + 1, size=(dim, dim))
            candidate = tuple(tuple(Fraction(int(v)) for v in row) for row in sample)
            if RationalMatrix.from_dense(candidate).rank() == dim:
                linear = candidate
                break
        return cls(dim, linear, quadratic)

    @property
    def inverse_linear(self) -> Tuple[Tuple[Fraction, ...], ...]:
        inverse = RationalMatrix.from_dense(self.linear).inverse().dense()
        return tuple(tuple(row) for row in inverse)

    def maps(self) -> List[PolyElement]:
        poly_ring, x = polynomial_ring(self.dim)
        m = range(self.dim)
        return [
            sum((to_domain(self.linear[i][j]) * x[j] for j in m), poly_ring.zero)
            + sum(
                (to_domain(self.quadratic[i][j][k] / 2) * x[j] * x[k] for j in m for k in m),
                poly_ring.zero,
            )
            for i in m
        ]

    def jacobian(self) -> List[List[PolyElement]]:
        """J^a_j = A^a_j + Q^a_jk x^k"""
        poly_ring, x = polynomial_ring(self.dim)
        m = range(self.dim)
        return [
            [
                poly_ring(to_domain(self.linear[a][j]))
                + sum((to_domain(self.quadratic[a][j][k]) * x[k] for k in m), poly_ring.zero)
                for j in m
            ]
            for a in m
        ]

    def inverse_jacobian(self) -> List[List[PolyElement]]:
        """First-order part of J^-1: A^-1 - A^-1 (Q x) A^-1"""
        poly_ring, x = polynomial_ring(self.dim)
        m = range(self.dim)
        inverse = self.inverse_linear
        slope = [
            [sum((to_domain(self.quadratic[a][b][k]) * x[k] for k in m), poly_ring.zero) for b in m]
            for a in m
        ]
        return [
            [
                poly_ring(to_domain(inverse[i][a]))
                - sum(
                    (to_domain(inverse[i][c] * inverse[b][a]) * slope[c][b] for b in m for c in m),
                    poly_ring.zero,
                )
                for a in m
            ]
            for i in m
        ]

    def pullback(self, tensor: PolyField, degree: int = 1) -> PolyField:
        """f*T truncated at the given degree: T(f(x)) with J^-1 on uppers and J on lowers"""
        if tensor.dim != self.dim:
            raise SignatureError("field and jet live in different dimensions", {"field": tensor.dim, "jet": self.dim})
        _, x = polynomial_ring(self.dim)
        substitution = list(zip(x, self.maps()))
        moved = {
            index: truncate(poly.compose(substitution), degree)
            for index, poly in tensor.components.items()
        }
        jacobian, inverse = self.jacobian(), self.inverse_jacobian()
        r, s = tensor.valence
        m = range(self.dim)

        def component(index: Component) -> PolyElement:
            total = tensor.ring.zero
            for source in product(m, repeat=r + s):
                term = moved[source]
                if not term:
                    continue
                for slot in range(r):
                    term = truncate(term * inverse[index[slot]][source[slot]], degree)
                for slot in range(r, r + s):
                    term = truncate(term * jacobian[source[slot]][index[slot]], degree)
                total += term
            return total

        return PolyField.build(tensor.valence, self.dim, component)

    def push_table(self, table: Table, valence: Tuple[int, int]) -> Table:
        """Pull back a tensor given only at the origin, where J = A"""
        inverse = self.inverse_linear
        r, s = valence
        m = range(self.dim)
        result: Table = {}
        for index in product(m, repeat=r + s):
            total = Fraction(0)
            for source in product(m, repeat=r + s):
                value = table.get(source, Fraction(0))
                if not value:
                    continue
                for slot in range(r):
                    value *= inverse[index[slot]][source[slot]]
                for slot in range(r, r + s):
                    value *= self.linear[source[slot]][index[slot]]
                total += value
            result[index] = total
        return result


# Contraction of expressions against component tables

FieldTables = Mapping[Head, Mapping[Component, object]]


def contract(
    expression: IndexedExpression,
    tables: FieldTables,
    dim: int,
    zero,
    one,
    coerce: Callable[[Fraction], object] = lambda value: value,
) -> Dict[Component, object]:
    """Sum every monomial over dummy values; works for numbers and polynomials alike"""
    slots = expression.upper + expression.lower
    result = {index: zero for index in product(range(dim), repeat=len(slots))}
    for key, coefficient in expression.terms.items():
        names: List[IndexName] = []
        for factor in key.factors:
            if factor.head not in tables and factor.head != Head.DELTA:
                raise SignatureError("no values supplied for factor", {"head": factor.head.name})
            for name, _ in factor.indices():
                if name not in names:
                    names.append(name)
        weight = coerce(coefficient * Fraction(dim) ** key.dim_power)
        position = {name: n for n, name in enumerate(names)}
        free_positions = [position[name] for name in slots]
        for values in product(range(dim), repeat=len(names)):
            term = one
            for factor in key.factors:
                index = tuple(values[position[name]] for name, _ in factor.indices())
                if factor.head == Head.DELTA:
                    if index[0] != index[1]:
                        term = zero
                        break
                    continue
                term = term * tables[factor.head][index]
                if not term:
                    break
            if term:
                target = tuple(values[n] for n in free_positions)
                result[target] = result[target] + weight * term
    return result
