"""Auxiliary connection method: covariantize, collect, solve"""

from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

from app.core.exceptions import InconsistencyError, StructuralError
from app.core.logging import LoggerMixin
from app.models.ansatz import AnsatzFamily
from app.models.expression import IndexedExpression
from app.models.matrix import RationalMatrix
from app.models.monomial import Monomial, next_dummy
from app.models.notation import format_monomial
from app.models.relations import RelationQuotient
from app.models.system import ConstraintSystem, OperatorBasis
from app.models.tensor import Factor, Head, connection, dummy
from app.schemas.signature import INPUT_CONSTRAINTS, SymmetryConstraint, TensorSignature
from app.services.ansatz_service import ansatz_service


def _replace(names: Tuple, position: int, name) -> Tuple:
    return names[:position] + (name,) + names[position + 1:]


class ConnectionService(LoggerMixin):
    """Rows of the system are the coefficients of independent connection monomials"""

    def covariantize(self, key: Monomial, sign: int = 1) -> IndexedExpression:
        """Replace the partial derivative by the covariant one

        nabla_d T^u_l = d_d T^u_l - sign K_d^u_q T^q_l + sign K_d^q_l T^u_q
        """
        positions = [n for n, f in enumerate(key.factors) if f.is_derivative]
        if len(positions) != 1:
            raise StructuralError(
                "covariantization needs exactly one derivative factor",
                {"derivatives": len(positions)},
            )
        if key.count(Head.CONN):
            raise StructuralError("monomial already carries a connection symbol")
        position = positions[0]
        derived = key.factors[position]
        base = derived.underived()
        d = derived.derivative_index
        q = dummy(next_dummy(key.factors))
        others = key.factors[:position] + key.factors[position + 1:]
        products = [(key.factors, Fraction(1), key.dim_power)]
        for slot, name in enumerate(base.upper):
            field = Factor(base.head, _replace(base.upper, slot, q), base.lower, base.label)
            products.append((others + (field, connection(d, name, q)), Fraction(-sign), key.dim_power))
        for slot, name in enumerate(base.lower):
            field = Factor(base.head, base.upper, _replace(base.lower, slot, q), base.label)
            products.append((others + (field, connection(d, q, name)), Fraction(sign), key.dim_power))
        upper, lower = key.free_indices()
        return IndexedExpression.from_products(upper, lower, products)

    def k_part(self, expression: IndexedExpression, sign: int = 1) -> IndexedExpression:
        """covariantize minus the partial-derivative form, term by term"""
        total = IndexedExpression.zero(expression.upper, expression.lower)
        for key, value in expression.terms.items():
            single = IndexedExpression(expression.upper, expression.lower, {key: Fraction(1)})
            total = total + (self.covariantize(key, sign) - single).scale(value)
        for key in total.terms:
            if key.count(Head.CONN) != 1 or any(f.is_derivative for f in key.factors):
                raise InconsistencyError(
                    "connection part contains a curvature-like monomial",
                    {"factors": len(key.factors)},
                )
        return total

    def reduced_k_part(
        self,
        expression: IndexedExpression,
        signature: TensorSignature,
        constraints: Iterable[SymmetryConstraint] = (),
        sign: int = 1,
    ) -> IndexedExpression:
        """K-part modulo the relations holding on constrained inputs"""
        part = self.k_part(expression, sign)
        active = frozenset(constraints) & INPUT_CONSTRAINTS
        if not active or part.is_zero():
            return part
        quotient = RelationQuotient.build(part.terms, signature, active)
        return quotient.reduce_expression(part)

    def is_natural(
        self,
        expression: IndexedExpression,
        signature: TensorSignature,
        constraints: Iterable[SymmetryConstraint] = (),
    ) -> bool:
        return self.reduced_k_part(expression, signature, constraints).is_zero()

    def extract_system(self, family: AnsatzFamily, sign: int = 1) -> ConstraintSystem:
        parts = [self.k_part(family.monomial_expression(key), sign) for key in family.terms]
        active = family.constraints & INPUT_CONSTRAINTS
        if active:
            keys = {key for part in parts for key in part.terms}
            quotient = RelationQuotient.build(keys, family.signature, active)
            parts = [quotient.reduce_expression(part) for part in parts]
        for key, part in zip(family.terms, parts):
            if part.has_dim():
                raise InconsistencyError(
                    "constraint row depends on the dimension",
                    {"monomial": format_monomial(key, "ascii")},
                )
        collected: Dict[Monomial, Dict[int, Fraction]] = {}
        for column, part in enumerate(parts):
            for key, value in part.terms.items():
                collected.setdefault(key, {})[column] = value
        provenance = tuple(sorted(collected))
        system = ConstraintSystem(
            unknowns=family.unknowns,
            rows=tuple(collected[key] for key in provenance),
            provenance=provenance,
        )
        self.log_operation(
            "extract_system",
            signature=family.signature.label,
            unknowns=len(family.unknowns),
            rows=len(provenance),
        )
        return system

    def solve(self, system: ConstraintSystem, family: AnsatzFamily) -> OperatorBasis:
        matrix = system.matrix
        echelon = matrix.rref()
        nullspace = matrix.nullspace()
        if echelon.rank + len(nullspace) != len(system.unknowns):
            raise InconsistencyError(
                "rank and nullity do not add up",
                {"rank": echelon.rank, "nullity": len(nullspace), "unknowns": len(system.unknowns)},
            )
        for vector in nullspace:
            if any(matrix.apply(vector)):
                raise InconsistencyError("nullspace vector violates the system")
        basis = OperatorBasis(family, tuple(tuple(v) for v in nullspace), echelon.rank)
        if SymmetryConstraint.OUTPUT_ALTERNATING in family.constraints:
            basis = self._alternated(basis)
        self.log_operation(
            "solve",
            signature=family.signature.label,
            rank=echelon.rank,
            dimension=basis.dimension,
        )
        return basis

    def _alternated(self, basis: OperatorBasis) -> OperatorBasis:
        """Image of the solution space under alternation of the output lower slots"""
        family = basis.family
        quotient = ansatz_service.quotient(family, family.constraints)
        vectors: List[Dict[int, Fraction]] = []
        for expression in basis.expressions:
            projected = expression.alternate(expression.lower)
            coordinates = quotient.vector(projected, family.terms)
            vectors.append({n: c for n, c in enumerate(coordinates) if c})
        echelon = RationalMatrix.from_rows(vectors, family.size).rref()
        rows = echelon.matrix.sparse_rows()[:echelon.rank]
        dense = tuple(
            tuple(row.get(n, Fraction(0)) for n in range(family.size)) for row in rows
        )
        return OperatorBasis(family, dense, basis.rank, alternated=True)

    def check_soundness(self, basis: OperatorBasis) -> None:
        family = basis.family
        for n, expression in enumerate(basis.expressions):
            if not self.is_natural(expression, family.signature, family.constraints):
                raise InconsistencyError("basis element has a nonzero connection part", {"element": n})


connection_service = ConnectionService()
