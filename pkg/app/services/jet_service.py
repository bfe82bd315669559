"""Numeric naturality oracle on polynomial fields and diffeomorphism jets"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import NaturalOperatorError, SignatureError
from app.core.logging import LoggerMixin
from app.models.expression import IndexedExpression
from app.models.jets import (
    Component,
    DiffeoJet,
    PolyField,
    Table,
    contract,
    polynomial_ring,
    random_polynomial,
    to_domain,
)
from app.models.monomial import Monomial
from app.models.tensor import Head
from app.schemas.signature import SymmetryConstraint, TensorSignature, check_constraints
from app.schemas.verification import NaturalityReport, Witness
from app.services.catalog_service import catalog_service

FieldTables = Dict[Head, Table]


def _sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
    return -1 if inversions % 2 else 1


def project(field: PolyField, slots: Sequence[int], signed: bool) -> PolyField:
    """Symmetrize or alternate the components over the given slot positions"""
    if len(slots) < 2:
        return field
    orders = list(permutations(range(len(slots))))
    weight = to_domain(Fraction(1, len(orders)))

    def component(index: Component):
        total = field.ring.zero
        for order in orders:
            source = list(index)
            for n, p in enumerate(order):
                source[slots[n]] = index[slots[p]]
            term = field.components[tuple(source)]
            total += term if not signed or _sign(order) > 0 else -term
        return total * weight

    return PolyField.build(field.valence, field.dim, component)


def exterior_derivative(form: PolyField) -> PolyField:
    """(d a)_{i0..ik} = sum_a (-1)^a d_{ia} a_{i0..^ia..ik} on polynomial components"""
    _, gens = polynomial_ring(form.dim)
    r, k = form.valence
    if r:
        raise SignatureError("exterior derivative needs a covariant field", {"valence": form.valence})

    def component(index: Component):
        total = form.ring.zero
        for a in range(k + 1):
            rest = index[:a] + index[a + 1:]
            term = form.components[rest].diff(gens[index[a]])
            total += term if a % 2 == 0 else -term
        return total

    return PolyField.build((0, k + 1), form.dim, component)


def field_tables(phi: PolyField, psi: PolyField, point: Sequence[Fraction]) -> FieldTables:
    return {
        Head.PHI: phi.values_at(point),
        Head.DPHI: phi.derivatives_at(point),
        Head.PSI: psi.values_at(point),
        Head.DPSI: psi.derivatives_at(point),
    }


def _check_valence(expression: IndexedExpression, phi: PolyField, psi: PolyField) -> None:
    expected = {Head.PHI: phi.valence, Head.PSI: psi.valence}
    for key in expression.terms:
        for factor in key.factors:
            base = {Head.DPHI: Head.PHI, Head.DPSI: Head.PSI}.get(factor.head, factor.head)
            if base in expected and (len(factor.upper), len(factor.base_lower)) != expected[base]:
                raise SignatureError(
                    "field valence does not match the operator",
                    {"field": base.name, "expected": expected[base],
                     "found": (len(factor.upper), len(factor.base_lower))},
                )


@dataclass(frozen=True)
class TrialInputs:
    """One trial: the jet and both field sets as tables at the origin"""

    trial: int
    jet: DiffeoJet
    original: FieldTables
    pulled: FieldTables


class JetService(LoggerMixin):
    """Compares D(f*phi, f*psi) with f*D(phi, psi) at the origin, exactly"""

    def sample_inputs(
        self,
        signature: TensorSignature,
        constraints: Iterable[SymmetryConstraint],
        rng: np.random.Generator,
        dim: int,
        pure: bool = False,
    ) -> Tuple[PolyField, PolyField]:
        """Random polynomial phi and psi satisfying the input constraints"""
        found = check_constraints(signature, constraints)
        degree, bound = settings.FIELD_DEGREE, settings.COEFFICIENT_RANGE
        r, s = signature.psi_r, signature.psi_s
        if pure:
            function = random_polynomial(dim, degree, rng, bound)
            phi = PolyField.scaled_identity(function, dim)
        else:
            phi = PolyField.random((1, signature.phi_p), dim, degree, rng, bound)
        if SymmetryConstraint.PHI_ANTISYMMETRIC in found:
            phi = project(phi, range(1, 1 + signature.phi_p), signed=True)

        if SymmetryConstraint.PSI_CLOSED_FORM in found:
            potential = PolyField.random((0, s - 1), dim, degree + 1, rng, bound)
            psi = exterior_derivative(project(potential, range(s - 1), signed=True))
        else:
            psi = PolyField.random((r, s), dim, degree, rng, bound)
        slots = range(r) if r >= 2 else range(r, r + s)
        if SymmetryConstraint.PSI_SYMMETRIC in found:
            psi = project(psi, slots, signed=False)
        if SymmetryConstraint.PSI_ANTISYMMETRIC in found:
            psi = project(psi, slots, signed=True)
        return phi, psi

    def evaluate(
        self,
        expression: IndexedExpression,
        phi: PolyField,
        psi: PolyField,
        point: Optional[Sequence[Fraction]] = None,
    ) -> Table:
        """Exact components of the operator at a point"""
        _check_valence(expression, phi, psi)
        point = point or [Fraction(0)] * phi.dim
        return contract(expression, field_tables(phi, psi, point), phi.dim, Fraction(0), Fraction(1))

    def evaluate_field(self, expression: IndexedExpression, phi: PolyField, psi: PolyField) -> PolyField:
        """The operator output as a polynomial field, truncated to degree one"""
        _check_valence(expression, phi, psi)
        poly_ring, gens = polynomial_ring(phi.dim)

        def derivatives(field: PolyField):
            return {
                index + (d,): poly.diff(gens[d])
                for index, poly in field.components.items()
                for d in range(field.dim)
            }

        tables = {
            Head.PHI: phi.components,
            Head.DPHI: derivatives(phi),
            Head.PSI: psi.components,
            Head.DPSI: derivatives(psi),
        }
        result = contract(expression, tables, phi.dim, poly_ring.zero, poly_ring.one, coerce=to_domain)
        return PolyField(expression.valence, phi.dim, result).truncated(1)

    def pullback(self, field: PolyField, jet: DiffeoJet) -> Table:
        """Components of f*T at the origin"""
        return jet.pullback(field, degree=1).values_at([Fraction(0)] * field.dim)

    def prepare_trial(
        self,
        trial: int,
        signature: TensorSignature,
        constraints: Iterable[SymmetryConstraint],
        seed: int,
        dim: int,
        pure: bool = False,
    ) -> TrialInputs:
        """Even trials use an identity linear part, odd trials a random invertible one"""
        rng = np.random.default_rng([seed, trial])
        phi, psi = self.sample_inputs(signature, constraints, rng, dim, pure)
        jet = DiffeoJet.random(dim, rng, settings.JET_COEFFICIENT_RANGE, conjugated=bool(trial % 2))
        origin = [Fraction(0)] * dim
        pulled_phi, pulled_psi = jet.pullback(phi), jet.pullback(psi)
        return TrialInputs(
            trial=trial,
            jet=jet,
            original=field_tables(phi, psi, origin),
            pulled=field_tables(pulled_phi, pulled_psi, origin),
        )

    def _monomial_tables(
        self,
        keys: Iterable[Monomial],
        upper,
        lower,
        tables: FieldTables,
        dim: int,
    ) -> Dict[Monomial, Table]:
        return {
            key: contract(IndexedExpression(upper, lower, {key: Fraction(1)}), tables, dim, Fraction(0), Fraction(1))
            for key in keys
        }

    def _witness(
        self,
        expression: IndexedExpression,
        inputs: TrialInputs,
        original: Mapping[Monomial, Table],
        pulled: Mapping[Monomial, Table],
    ) -> Optional[Witness]:
        def combine(per_key: Mapping[Monomial, Table]) -> Table:
            total: Table = {}
            for key, coefficient in expression.terms.items():
                for index, value in per_key[key].items():
                    total[index] = total.get(index, Fraction(0)) + coefficient * value
            return total

        expected = inputs.jet.push_table(combine(original), expression.valence)
        actual = combine(pulled)
        for index in sorted(expected):
            if expected[index] != actual.get(index, Fraction(0)):
                return Witness(
                    trial=inputs.trial,
                    component=list(index),
                    expected=str(expected[index]),
                    actual=str(actual.get(index, Fraction(0))),
                )
        return None

    def check_basis(
        self,
        expressions: Mapping[str, IndexedExpression],
        signature: TensorSignature,
        constraints: Iterable[SymmetryConstraint] = (),
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        dim: Optional[int] = None,
        pure: bool = False,
    ) -> List[NaturalityReport]:
        """One report per expression; monomial tables are shared within a trial"""
        trials = settings.NATURALITY_TRIALS if trials is None else trials
        seed = settings.DEFAULT_SEED if seed is None else seed
        dim = dim or settings.JET_DIMENSION
        constraints = frozenset(constraints)
        witnesses: Dict[str, Optional[Witness]] = {name: None for name in expressions}
        if not expressions:
            return []
        keys = sorted({key for e in expressions.values() for key in e.terms})
        first = next(iter(expressions.values()))
        upper, lower = first.upper, first.lower
        try:
            for trial in range(trials):
                pending = [name for name, w in witnesses.items() if w is None]
                if not pending:
                    break
                inputs = self.prepare_trial(trial, signature, constraints, seed, dim, pure)
                original = self._monomial_tables(keys, upper, lower, inputs.original, dim)
                pulled = self._monomial_tables(keys, upper, lower, inputs.pulled, dim)
                for name in pending:
                    witnesses[name] = self._witness(expressions[name], inputs, original, pulled)
        except NaturalOperatorError as e:
            self.log_error(e, "check_naturality", signature=signature.label)
            raise
        reports = []
        for name, witness in witnesses.items():
            passed = witness is None
            self.log_operation("check_naturality", operator=name, trials=trials, seed=seed, passed=passed)
            reports.append(NaturalityReport(
                operator=name,
                trials=trials,
                seed=seed,
                dim=dim,
                passed=passed,
                pure=pure,
                witness=witness,
                success=passed,
            ))
        return reports

    def check_naturality(
        self,
        expression: IndexedExpression,
        signature: TensorSignature,
        constraints: Iterable[SymmetryConstraint] = (),
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        dim: Optional[int] = None,
        name: str = "expression",
    ) -> NaturalityReport:
        return self.check_basis({name: expression}, signature, constraints, trials, seed, dim)[0]

    def check_pure_case(
        self,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        dim: Optional[int] = None,
    ) -> NaturalityReport:
        """The Yano-Ako operator on pairs with phi = f I, for which psi is always pure"""
        entry = catalog_service.entry("yano_ako_pure")
        trials = settings.PURE_TRIALS if trials is None else trials
        return self.check_basis(
            {entry.name: catalog_service.expand(entry.name)},
            entry.signature,
            trials=trials,
            seed=seed,
            dim=dim,
            pure=True,
        )[0]


jet_service = JetService()
