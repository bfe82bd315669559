"""Symbolic identities between named operators"""

from dataclasses import dataclass
from typing import Callable, FrozenSet, List

from app.core.exceptions import CatalogError, NaturalOperatorError
from app.core.logging import LoggerMixin
from app.models.calculus import (
    alternate_lower,
    alternator_derivative,
    argument,
    compose,
    components,
    exterior_derivative,
    identity,
    lie_derivative,
    lie_derivative_covariant,
    lie_derivative_on,
    phi_field,
    psi_field,
    reorder,
    standardize,
)
from app.models.expression import IndexedExpression
from app.models.notation import format_expression, parse
from app.models.relations import RelationQuotient
from app.schemas.signature import SymmetryConstraint, TensorSignature
from app.schemas.verification import IdentityResult, IdentitySuiteReport
from app.services.catalog_service import (
    ANTISYMMETRIC_PSI,
    ANTISYMMETRIC_S,
    FROELICHER_NIJENHUIS_COORDINATES,
    TANGENT_ONE_FORM,
    TANGENT_TANGENT,
    TANGENT_TWO_TENSOR,
    TWO_TENSOR_ONE_FORM,
    VECTOR_ONE_FORM,
    VECTOR_TWO_TENSOR,
    YZX,
    ZXY,
    XZY,
    catalog_service,
    froelicher_nijenhuis_argument_form,
    yano_ako_tangent_two_form,
)

Builder = Callable[[], IndexedExpression]

YANO_AKO_PHI1_COORDINATES = (
    "phi^m_i psi_jk,m + phi^m_j (psi_mi,k - psi_mk,i) - phi^m_k psi_ji,m"
    " + psi_mi (phi^m_j,k - phi^m_k,j) + psi_jm (phi^m_i,k - phi^m_k,i)"
    " + psi_mk (phi^m_i,j - phi^m_j,i)"
)
YANO_AKO_PHI2_COORDINATES = (
    "phi^m_i psi_jk,m - phi^m_j psi_ik,m + phi^m_k (psi_im,j - psi_jm,i)"
    " - psi_im (phi^m_j,k - phi^m_k,j) + psi_jm (phi^m_i,k - phi^m_k,i)"
    " + psi_mk (phi^m_i,j - phi^m_j,i)"
)
THIRD_SLOT_COMBINATION = (
    "phi^m_i (psi_mk,j - psi_mj,k - psi_jk,m) + phi^m_k (psi_jm,i - psi_im,j + psi_ij,m)"
    " + (psi_jm + psi_mj) (phi^m_k,i - phi^m_i,k)"
)
FIRST_SLOT_COMBINATION = (
    "phi^m_i (psi_mj,k - psi_mk,j - psi_kj,m) + phi^m_j (psi_km,i - psi_im,k + psi_ik,m)"
    " + (psi_km + psi_mk) (phi^m_j,i - phi^m_i,j)"
)
DIFFERENCE_COMBINATION = (
    "phi^m_j (psi_km,i - psi_im,k - psi_ki,m) + phi^m_k (psi_mi,j - psi_mj,i + psi_ij,m)"
    " + (psi_im + psi_mi) (phi^m_k,j - phi^m_j,k)"
)
SUM_COMBINATION = (
    "2 phi^m_i psi_jk,m + phi^m_j (psi_mi,k - psi_mk,i - psi_ik,m)"
    " + phi^m_k (psi_im,j - psi_jm,i - psi_ji,m) + (psi_im - psi_mi) (phi^m_k,j - phi^m_j,k)"
    " - 2 psi_jm (phi^m_k,i - phi^m_i,k) - 2 psi_mk (phi^m_j,i - phi^m_i,j)"
)
S_FORM_B_BLOCK = (
    "(phi^m_ij - phi^m_ji) psi_m,k + (phi^m_ki - phi^m_ik) psi_m,j + (phi^m_jk - phi^m_kj) psi_m,i"
    " + psi_m (phi^m_jk,i - phi^m_kj,i + phi^m_ki,j - phi^m_ik,j + phi^m_ij,k - phi^m_ji,k)"
)


@dataclass(frozen=True)
class IdentityCase:
    """left == right on inputs satisfying the constraints"""

    name: str
    group: str
    description: str
    signature: TensorSignature
    left: Builder
    right: Builder
    constraints: FrozenSet[SymmetryConstraint] = frozenset()


def _op(name: str) -> Builder:
    return lambda: catalog_service.expand(name)


# Vector fields


def _vector() -> IndexedExpression:
    return phi_field(0)


def _cartan(form: IndexedExpression) -> IndexedExpression:
    """i_X d psi + d i_X psi"""
    return compose(exterior_derivative(form), 0, _vector()) + exterior_derivative(compose(form, 0, _vector()))


def _lie_derivative_02_arguments() -> IndexedExpression:
    Y, Z = argument("Y"), argument("Z")
    return components(lie_derivative_on(_vector(), psi_field(0, 2), [Y, Z]), ["Y", "Z"])


# Tangent-valued one-forms


def _d_psi_circ(slot: int, form: IndexedExpression) -> IndexedExpression:
    return compose(exterior_derivative(form), slot, phi_field(1))


def _d_of_psi_circ_phi() -> IndexedExpression:
    return exterior_derivative(compose(psi_field(0, 1), 0, phi_field(1)))


def _yano_ako_alternation_right() -> IndexedExpression:
    one_form, phi = psi_field(0, 1), phi_field(1)
    return lie_derivative(phi, one_form) - lie_derivative(identity(), compose(one_form, 0, phi))


# Tangent-valued one-forms and (0,2) tensors


def _d_alt(slot: int) -> IndexedExpression:
    """6 d(Alt psi) o_slot phi with the alternator normalization"""
    d_alt_psi = alternator_derivative(alternate_lower(psi_field(0, 2)))
    return compose(d_alt_psi, slot, phi_field(1)).scale(6)


def _d_alt_of_composition(slot: int) -> IndexedExpression:
    """6 d(Alt(psi o_slot phi))"""
    return alternator_derivative(compose(psi_field(0, 2), slot, phi_field(1))).scale(6)


def _phi(n: int) -> IndexedExpression:
    return catalog_service.expand(f"yano_ako_phi{n}")


def _form_lie_derivative_right() -> IndexedExpression:
    two_form, phi = psi_field(0, 2), phi_field(1)
    d_psi = exterior_derivative(two_form)
    total = compose(d_psi, 0, phi) + compose(d_psi, 1, phi) + compose(d_psi, 2, phi)
    return total - exterior_derivative(alternate_lower(compose(two_form, 0, phi))).scale(2)


# Tangent-valued two-forms


def _b_block() -> IndexedExpression:
    """d psi(S(X,Y),Z)"""
    return compose(exterior_derivative(psi_field(0, 1)), 0, phi_field(2))


def _d_psi_s() -> IndexedExpression:
    """d(psi o S)"""
    return exterior_derivative(compose(psi_field(0, 1), 0, phi_field(2)))


def _lie_derivative_identity_s() -> IndexedExpression:
    return lie_derivative(identity(), compose(psi_field(0, 1), 0, phi_field(2)))


def _lie_derivative_s() -> IndexedExpression:
    return lie_derivative(phi_field(2), psi_field(0, 1))


def _cases() -> List[IdentityCase]:
    return [
        IdentityCase(
            "cartan_formula_one_form", "vector_field",
            "L_X psi = i_X d psi + d i_X psi for a 1-form",
            VECTOR_ONE_FORM,
            lambda: lie_derivative_covariant(_vector(), psi_field(0, 1)),
            lambda: _cartan(psi_field(0, 1)),
        ),
        IdentityCase(
            "lie_derivative_02_argument_form", "vector_field",
            "(L_X psi)(Y,Z) = X.psi(Y,Z) - psi([X,Y],Z) - psi(Y,[X,Z])",
            VECTOR_TWO_TENSOR,
            _lie_derivative_02_arguments,
            _op("lie_derivative_02"),
        ),
        IdentityCase(
            "cartan_formula_two_form", "vector_field",
            "for a 2-form the Lie derivative of a (0,2) tensor is i_X d psi + d i_X psi",
            VECTOR_TWO_TENSOR,
            _op("lie_derivative_02"),
            lambda: _cartan(psi_field(0, 2)),
            ANTISYMMETRIC_PSI,
        ),
        IdentityCase(
            "graded_lie_derivative_vector_field", "vector_field",
            "[i_X, d] agrees with the coordinate Lie derivative on 2-forms",
            VECTOR_TWO_TENSOR,
            lambda: lie_derivative(_vector(), psi_field(0, 2)),
            _op("lie_derivative_02"),
            ANTISYMMETRIC_PSI,
        ),
        IdentityCase(
            "yano_ako_one_form", "tangent_one_form",
            "(L_{phi X} psi - L_X(psi o phi))(Y) = d psi o_1 phi - d(psi o phi)",
            TANGENT_ONE_FORM,
            _op("yano_ako_one_form"),
            lambda: _d_psi_circ(0, psi_field(0, 1)) - _d_of_psi_circ_phi(),
        ),
        IdentityCase(
            "lie_derivative_wrt_tangent_form_one_form", "tangent_one_form",
            "L_phi psi = d psi o_1 phi + d psi o_2 phi - d(psi o phi)",
            TANGENT_ONE_FORM,
            _op("lie_derivative_wrt_form"),
            lambda: (
                _d_psi_circ(0, psi_field(0, 1)) + _d_psi_circ(1, psi_field(0, 1)) - _d_of_psi_circ_phi()
            ),
        ),
        IdentityCase(
            "lie_derivative_identity_one_form", "tangent_one_form",
            "L_I(psi o phi) = d(psi o phi)",
            TANGENT_ONE_FORM,
            lambda: lie_derivative(identity(), compose(psi_field(0, 1), 0, phi_field(1))),
            _d_of_psi_circ_phi,
        ),
        IdentityCase(
            "yano_ako_one_form_alternation", "tangent_one_form",
            "2 Alt Phi(phi, psi) = L_phi psi - L_I(psi o phi)",
            TANGENT_ONE_FORM,
            lambda: alternate_lower(catalog_service.expand("yano_ako_one_form")).scale(2),
            _yano_ako_alternation_right,
        ),
        IdentityCase(
            "two_form_valued_compositions", "tangent_one_form",
            "Alt(d psi o_1 phi) = Alt(d psi o_2 phi)",
            TANGENT_ONE_FORM,
            lambda: alternate_lower(_d_psi_circ(0, psi_field(0, 1))),
            lambda: alternate_lower(_d_psi_circ(1, psi_field(0, 1))),
        ),
        IdentityCase(
            "yano_ako_phi1_coordinates", "yano_ako_two_tensor",
            "argument form of Phi_1 against its coordinate expansion",
            TANGENT_TWO_TENSOR,
            lambda: _phi(1),
            lambda: parse(YANO_AKO_PHI1_COORDINATES, "", "ijk"),
        ),
        IdentityCase(
            "yano_ako_phi2_coordinates", "yano_ako_two_tensor",
            "argument form of Phi_2 against its coordinate expansion",
            TANGENT_TWO_TENSOR,
            lambda: _phi(2),
            lambda: parse(YANO_AKO_PHI2_COORDINATES, "", "ijk"),
        ),
        IdentityCase(
            "yano_ako_phi1_third_slot_combination", "yano_ako_two_tensor",
            "6 d(Alt psi) o_3 phi - 6 d(Alt(psi o_1 phi)) - Phi_1",
            TANGENT_TWO_TENSOR,
            lambda: _d_alt(2) - _d_alt_of_composition(0) - _phi(1),
            lambda: parse(THIRD_SLOT_COMBINATION, "", "ijk"),
        ),
        IdentityCase(
            "yano_ako_phi2_first_slot_combination", "yano_ako_two_tensor",
            "6 d(Alt psi) o_1 phi - 6 d(Alt(psi o_2 phi)) - Phi_2",
            TANGENT_TWO_TENSOR,
            lambda: _d_alt(0) - _d_alt_of_composition(1) - _phi(2),
            lambda: parse(FIRST_SLOT_COMBINATION, "", "ijk"),
        ),
        IdentityCase(
            "yano_ako_difference_combination", "yano_ako_two_tensor",
            "-6 d(Alt psi) o_2 phi + 6 d(Alt psi) o_3 phi - Phi_1 + Phi_2",
            TANGENT_TWO_TENSOR,
            lambda: _d_alt(2) - _d_alt(1) - _phi(1) + _phi(2),
            lambda: parse(DIFFERENCE_COMBINATION, "", "ijk"),
        ),
        IdentityCase(
            "yano_ako_sum_combination", "yano_ako_two_tensor",
            "Phi_1 + Phi_2",
            TANGENT_TWO_TENSOR,
            lambda: _phi(1) + _phi(2),
            lambda: parse(SUM_COMBINATION, "", "ijk"),
        ),
        IdentityCase(
            "lie_derivative_wrt_tangent_form_two_form", "yano_ako_two_tensor",
            "L_phi psi = sum_a d psi o_a phi - 2 d(Alt(psi o_1 phi)) for a 2-form",
            TANGENT_TWO_TENSOR,
            _op("lie_derivative_wrt_form_2form"),
            _form_lie_derivative_right,
            ANTISYMMETRIC_PSI,
        ),
        IdentityCase(
            "froelicher_nijenhuis_argument_form", "froelicher_nijenhuis",
            "argument form of [phi, psi] against its coordinate expansion",
            TANGENT_TANGENT,
            froelicher_nijenhuis_argument_form,
            lambda: parse(FROELICHER_NIJENHUIS_COORDINATES, "i", "jk"),
        ),
        IdentityCase(
            "froelicher_nijenhuis_alternating", "froelicher_nijenhuis",
            "[phi, psi] is a tangent-valued 2-form",
            TANGENT_TANGENT,
            _op("froelicher_nijenhuis"),
            lambda: alternate_lower(catalog_service.expand("froelicher_nijenhuis")),
        ),
        IdentityCase(
            "yano_ako_tangent_two_form", "tangent_two_form",
            "Phi(S, psi)(X,Y,Z) = d psi(S(X,Y),Z) + d(psi o S)(X,Y,Z)",
            TWO_TENSOR_ONE_FORM,
            yano_ako_tangent_two_form,
            lambda: _b_block() + _d_psi_s(),
            ANTISYMMETRIC_S,
        ),
        IdentityCase(
            "yano_ako_tangent_two_form_swapped_orientation", "tangent_two_form",
            "Phi(S, psi) - d(psi o S)(X,Z,Y) - d psi(S(X,Y),Z) = 2 d(psi o S)",
            TWO_TENSOR_ONE_FORM,
            lambda: yano_ako_tangent_two_form() - reorder(_d_psi_s(), XZY) - _b_block(),
            lambda: _d_psi_s().scale(2),
            ANTISYMMETRIC_S,
        ),
        IdentityCase(
            "lie_derivative_wrt_s", "tangent_two_form",
            "L_S psi = d psi(S(X,Y),Z) + d psi(S(Y,Z),X) + d psi(S(Z,X),Y) + d(psi o S)",
            TWO_TENSOR_ONE_FORM,
            _lie_derivative_s,
            lambda: _b_block() + reorder(_b_block(), YZX) + reorder(_b_block(), ZXY) + _d_psi_s(),
            ANTISYMMETRIC_S,
        ),
        IdentityCase(
            "lie_derivative_identity_s", "tangent_two_form",
            "L_I(psi o S) = d(psi o S)",
            TWO_TENSOR_ONE_FORM,
            _lie_derivative_identity_s,
            _d_psi_s,
            ANTISYMMETRIC_S,
        ),
        IdentityCase(
            "yano_ako_tangent_two_form_alternation", "tangent_two_form",
            "3 Alt Phi(S, psi) = L_S psi + 2 L_I(psi o S)",
            TWO_TENSOR_ONE_FORM,
            lambda: alternate_lower(yano_ako_tangent_two_form()).scale(3),
            lambda: _lie_derivative_s() + _lie_derivative_identity_s().scale(2),
            ANTISYMMETRIC_S,
        ),
        IdentityCase(
            "s_form_b_block", "tangent_two_form",
            "the free parameter of the B-block is 2 d(psi o Alt S)",
            TWO_TENSOR_ONE_FORM,
            lambda: parse(S_FORM_B_BLOCK, "", "ijk"),
            lambda: catalog_service.expand("d_psi_circ_alt_s").scale(2),
        ),
        IdentityCase(
            "d_psi_circ_alt_s_alternating", "tangent_two_form",
            "d(psi o Alt S) is a 3-form",
            TWO_TENSOR_ONE_FORM,
            _op("d_psi_circ_alt_s"),
            lambda: alternate_lower(catalog_service.expand("d_psi_circ_alt_s")),
        ),
    ]


class IdentityService(LoggerMixin):
    """Expands both sides and compares them modulo the input constraints"""

    def __init__(self):
        self._registry = {case.name: case for case in _cases()}

    @property
    def names(self) -> List[str]:
        return list(self._registry)

    @property
    def groups(self) -> List[str]:
        return list(dict.fromkeys(case.group for case in self._registry.values()))

    def select(self, suite: str = "all") -> List[IdentityCase]:
        """Accepts "all", a group name or an identity name"""
        if suite == "all":
            return list(self._registry.values())
        if suite in self._registry:
            return [self._registry[suite]]
        chosen = [case for case in self._registry.values() if case.group == suite]
        if not chosen:
            raise CatalogError(
                "unknown identity or group",
                {"suite": suite, "groups": ", ".join(self.groups)},
            )
        return chosen

    def residual(self, case: IdentityCase) -> IndexedExpression:
        left, right = standardize(case.left()), standardize(case.right())
        difference = left - right
        if case.constraints and not difference.is_zero():
            quotient = RelationQuotient.build(difference.terms, case.signature, case.constraints)
            difference = quotient.reduce_expression(difference)
        return difference

    def verify(self, case: IdentityCase) -> IdentityResult:
        try:
            difference = self.residual(case)
        except NaturalOperatorError as e:
            self.log_error(e, "verify_identity", identity=case.name)
            raise
        passed = difference.is_zero()
        self.log_operation("verify_identity", identity=case.name, passed=passed, residual_terms=len(difference))
        return IdentityResult(
            name=case.name,
            group=case.group,
            description=case.description,
            passed=passed,
            residual=None if passed else format_expression(difference, "ascii"),
        )

    def run(self, suite: str = "all") -> IdentitySuiteReport:
        results = [self.verify(case) for case in self.select(suite)]
        report = IdentitySuiteReport(suite=suite, results=results)
        report.success = not report.failed
        if report.failed:
            report.message = f"{len(report.failed)} of {len(results)} identities failed"
        return report


identity_service = IdentityService()
