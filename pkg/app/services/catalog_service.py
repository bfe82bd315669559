"""Catalog of named natural operators and basis matching"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence

from app.core.exceptions import CatalogError, NaturalOperatorError
from app.core.logging import LoggerMixin
from app.models import calculus as calc
from app.models.calculus import (
    alternate_lower,
    alternator_derivative,
    argument,
    compose,
    components,
    evaluate_on,
    exterior_derivative,
    identity,
    lie_derivative,
    lie_derivative_covariant,
    lie_derivative_on,
    phi_field,
    psi_field,
    reorder,
    tensor,
    trace,
    transpose,
)
from app.models.expression import IndexedExpression
from app.models.matrix import RationalMatrix, solve_membership
from app.models.notation import format_expression, parse
from app.models.system import OperatorBasis
from app.schemas.classification import ChangeOfBasis
from app.schemas.expression import fraction_to_text
from app.schemas.signature import (
    INPUT_CONSTRAINTS,
    SymmetryConstraint,
    TensorSignature,
    check_constraints,
)
from app.services.ansatz_service import ansatz_service

VECTOR_FIELDS = TensorSignature(phi_p=0, psi_r=1, psi_s=0)
VECTOR_ONE_FORM = TensorSignature(phi_p=0, psi_r=0, psi_s=1)
VECTOR_TWO_TENSOR = TensorSignature(phi_p=0, psi_r=0, psi_s=2)
TANGENT_TANGENT = TensorSignature(phi_p=1, psi_r=1, psi_s=1)
TANGENT_ONE_FORM = TensorSignature(phi_p=1, psi_r=0, psi_s=1)
TANGENT_TWO_TENSOR = TensorSignature(phi_p=1, psi_r=0, psi_s=2)
TWO_TENSOR_ONE_FORM = TensorSignature(phi_p=2, psi_r=0, psi_s=1)

ANTISYMMETRIC_S = frozenset({SymmetryConstraint.PHI_ANTISYMMETRIC})
ANTISYMMETRIC_PSI = frozenset({SymmetryConstraint.PSI_ANTISYMMETRIC})

# lower-slot orders R(x0, x1, x2) = T(x_order[0], x_order[1], x_order[2])
XYZ, YXZ, XZY, ZXY, YZX, ZYX = (0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 0, 1), (1, 2, 0), (2, 1, 0)

FROELICHER_NIJENHUIS_COORDINATES = (
    "phi^m_j psi^i_k,m - phi^m_k psi^i_j,m + psi^m_j phi^i_k,m - psi^m_k phi^i_j,m"
    " - phi^i_m psi^m_k,j + phi^i_m psi^m_j,k - psi^i_m phi^m_k,j + psi^i_m phi^m_j,k"
)


@dataclass(frozen=True)
class CatalogEntry:
    """A named operator built from tensor calculus primitives"""

    name: str
    family: str
    signature: TensorSignature
    build: Callable[[], IndexedExpression]
    description: str
    constraints: FrozenSet[SymmetryConstraint] = frozenset()
    natural: bool = True


# Building blocks


def vector() -> IndexedExpression:
    return phi_field(0)


def d_trace(field: IndexedExpression) -> IndexedExpression:
    return exterior_derivative(trace(field))


def d_alt(form: IndexedExpression) -> IndexedExpression:
    """Alternator-normalized d of the antisymmetric part"""
    return alternator_derivative(alternate_lower(form))


def contracted_s(slot: int) -> IndexedExpression:
    """C^1_1 S for slot 0, C^1_2 S for slot 1"""
    return trace(phi_field(2), 0, slot)


def yano_ako_one_form() -> IndexedExpression:
    """(L_{phi X} psi - L_X(psi o phi))(Y)"""
    X, Y = argument("X"), argument("Y")
    phi, psi = phi_field(1), psi_field(0, 1)
    value = (
        lie_derivative_on(compose(phi, 0, X), psi, [Y])
        - lie_derivative_on(X, compose(psi, 0, phi), [Y])
    )
    return components(value, ["X", "Y"])


def _yano_ako_part(slot: int, first: str, arguments: Sequence[str]) -> IndexedExpression:
    """(L_{phi A} psi - L_A(psi o_slot phi))(B, C) before components"""
    phi, psi = phi_field(1), psi_field(0, 2)
    moved = argument(first)
    rest = [argument(label) for label in arguments]
    return (
        lie_derivative_on(compose(phi, 0, moved), psi, rest)
        - lie_derivative_on(moved, compose(psi, slot, phi), rest)
    )


def yano_ako_phi1() -> IndexedExpression:
    phi, psi = phi_field(1), psi_field(0, 2)
    X, Y, Z = argument("X"), argument("Y"), argument("Z")
    bracket = calc.bracket(X, Z)
    value = (
        _yano_ako_part(0, "X", ["Y", "Z"])
        - _yano_ako_part(0, "Z", ["Y", "X"])
        + evaluate_on(compose(psi, 1, phi), [Y, bracket])
        - evaluate_on(compose(psi, 0, phi), [Y, bracket])
    )
    return components(value, ["X", "Y", "Z"])


def yano_ako_phi2() -> IndexedExpression:
    phi, psi = phi_field(1), psi_field(0, 2)
    X, Y, Z = argument("X"), argument("Y"), argument("Z")
    bracket = calc.bracket(X, Y)
    value = (
        _yano_ako_part(1, "X", ["Y", "Z"])
        - _yano_ako_part(1, "Y", ["X", "Z"])
        - evaluate_on(compose(psi, 1, phi), [bracket, Z])
        + evaluate_on(compose(psi, 0, phi), [bracket, Z])
    )
    return components(value, ["X", "Y", "Z"])


def yano_ako_pure() -> IndexedExpression:
    """Tensorial only when psi(phi X, Y) = psi(X, phi Y)"""
    return components(_yano_ako_part(0, "X", ["Y", "Z"]), ["X", "Y", "Z"])


def yano_ako_tangent_two_form() -> IndexedExpression:
    """(L_{S(X,Y)} psi)(Z) - (L_X(psi o S))(Z,Y) - (L_Y(psi o S))(X,Z) + (psi o S)([X,Y],Z)"""
    s, psi = phi_field(2), psi_field(0, 1)
    X, Y, Z = argument("X"), argument("Y"), argument("Z")
    composed = compose(psi, 0, s)
    value = (
        lie_derivative_on(evaluate_on(s, [X, Y]), psi, [Z])
        - lie_derivative_on(X, composed, [Z, Y])
        - lie_derivative_on(Y, composed, [X, Z])
        + evaluate_on(composed, [calc.bracket(X, Y), Z])
    )
    return components(value, ["X", "Y", "Z"])


def froelicher_nijenhuis_argument_form() -> IndexedExpression:
    """[K,L](X,Y) = [KX,LY] - [KY,LX] - L([KX,Y] - [KY,X]) - K([X,LY] - [Y,LX]) + (LK + KL)[X,Y]"""
    k, l = phi_field(1), psi_field(1, 1)
    X, Y = argument("X"), argument("Y")
    kx, ky, lx, ly = compose(k, 0, X), compose(k, 0, Y), compose(l, 0, X), compose(l, 0, Y)
    b = calc.bracket
    value = (
        b(kx, ly) - b(ky, lx)
        - compose(l, 0, b(kx, Y) - b(ky, X))
        - compose(k, 0, b(X, ly) - b(Y, lx))
        + compose(compose(l, 0, k) + compose(k, 0, l), 0, b(X, Y))
    )
    return components(value, ["X", "Y"])


def _d_psi_s() -> IndexedExpression:
    """dpsi(S(x0, x1), x2)"""
    return compose(exterior_derivative(psi_field(0, 1)), 0, phi_field(2))


def _d_psi_circ_s() -> IndexedExpression:
    return exterior_derivative(compose(psi_field(0, 1), 0, phi_field(2)))


def _entries() -> List[CatalogEntry]:
    phi1, one_form, two_tensor = phi_field(1), psi_field(0, 1), psi_field(0, 2)
    tangent = psi_field(1, 1)
    entries = [
        CatalogEntry(
            "lie_bracket", "vector_fields", VECTOR_FIELDS,
            lambda: calc.bracket(vector(), psi_field(1, 0)),
            "Lie bracket [X, Y]",
        ),
        CatalogEntry(
            "nonexample_a2", "vector_fields", VECTOR_FIELDS,
            lambda: tensor(vector(), trace(calc.partial(psi_field(1, 0)))),
            "X^i d_m Y^m, excluded by the connection constraints",
            natural=False,
        ),
        CatalogEntry(
            "d_of_pairing", "vector_one_form", VECTOR_ONE_FORM,
            lambda: exterior_derivative(compose(one_form, 0, vector())),
            "d(psi(X))",
        ),
        CatalogEntry(
            "insert_d", "vector_one_form", VECTOR_ONE_FORM,
            lambda: compose(exterior_derivative(one_form), 0, vector()),
            "i_X d psi",
        ),
        CatalogEntry(
            "lie_derivative_one_form", "vector_one_form", VECTOR_ONE_FORM,
            lambda: lie_derivative_covariant(vector(), one_form),
            "L_X psi for a 1-form",
        ),
        CatalogEntry(
            "lie_derivative_02", "vector_two_tensor", VECTOR_TWO_TENSOR,
            lambda: lie_derivative_covariant(vector(), two_tensor),
            "L_X psi for a (0,2) tensor field",
        ),
        CatalogEntry(
            "lie_derivative_02_transposed", "vector_two_tensor", VECTOR_TWO_TENSOR,
            lambda: lie_derivative_covariant(vector(), transpose(two_tensor)),
            "L_X of the transposed tensor",
        ),
        CatalogEntry(
            "d_of_insertion", "vector_two_tensor", VECTOR_TWO_TENSOR,
            lambda: exterior_derivative(compose(two_tensor, 0, vector())),
            "d(X -| psi)",
        ),
        CatalogEntry(
            "d_of_insertion_transposed", "vector_two_tensor", VECTOR_TWO_TENSOR,
            lambda: exterior_derivative(compose(transpose(two_tensor), 0, vector())),
            "d(X -| transposed psi)",
        ),
    ]

    dtr_phi = lambda: d_trace(phi1)  # noqa: E731
    dtr_psi = lambda: d_trace(tangent)  # noqa: E731
    tangent_pairs = [
        ("dtr_phi_x_psi", "d(tr phi) (x) psi", lambda: tensor(dtr_phi(), tangent)),
        ("psi_x_dtr_phi", "psi (x) d(tr phi)", lambda: tensor(tangent, dtr_phi())),
        ("dtr_psi_x_phi", "d(tr psi) (x) phi", lambda: tensor(dtr_psi(), phi1)),
        ("phi_x_dtr_psi", "phi (x) d(tr psi)", lambda: tensor(phi1, dtr_psi())),
        ("tr_psi_dtr_phi_x_id", "(tr psi) d(tr phi) (x) I",
         lambda: tensor(tensor(trace(tangent), dtr_phi()), identity())),
        ("tr_psi_id_x_dtr_phi", "(tr psi) I (x) d(tr phi)",
         lambda: tensor(trace(tangent), tensor(identity(), dtr_phi()))),
        ("tr_phi_dtr_psi_x_id", "(tr phi) d(tr psi) (x) I",
         lambda: tensor(tensor(trace(phi1), dtr_psi()), identity())),
        ("tr_phi_id_x_dtr_psi", "(tr phi) I (x) d(tr psi)",
         lambda: tensor(trace(phi1), tensor(identity(), dtr_psi()))),
        ("dtr_phi_of_psi_x_id", "(d(tr phi) o psi) (x) I",
         lambda: tensor(compose(dtr_phi(), 0, tangent), identity())),
        ("id_x_dtr_phi_of_psi", "I (x) (d(tr phi) o psi)",
         lambda: tensor(identity(), compose(dtr_phi(), 0, tangent))),
        ("dtr_psi_of_phi_x_id", "(d(tr psi) o phi) (x) I",
         lambda: tensor(compose(dtr_psi(), 0, phi1), identity())),
        ("id_x_dtr_psi_of_phi", "I (x) (d(tr psi) o phi)",
         lambda: tensor(identity(), compose(dtr_psi(), 0, phi1))),
        ("dtr_phi_psi_x_id", "d(tr(phi o psi)) (x) I",
         lambda: tensor(d_trace(compose(phi1, 0, tangent)), identity())),
        ("id_x_dtr_phi_psi", "I (x) d(tr(phi o psi))",
         lambda: tensor(identity(), d_trace(compose(phi1, 0, tangent)))),
        ("froelicher_nijenhuis", "Froelicher-Nijenhuis bracket [phi, psi]",
         lambda: parse(FROELICHER_NIJENHUIS_COORDINATES, "i", "jk")),
    ]
    entries += [
        CatalogEntry(name, "tangent_tangent", TANGENT_TANGENT, build, text)
        for name, text, build in tangent_pairs
    ]

    d_psi = lambda: exterior_derivative(one_form)  # noqa: E731
    entries += [
        CatalogEntry(name, "tangent_one_form", TANGENT_ONE_FORM, build, text)
        for name, text, build in [
            ("trace_dpsi", "(tr phi) d psi", lambda: tensor(trace(phi1), d_psi())),
            ("oneform_x_dtrace", "psi (x) d(tr phi)", lambda: tensor(one_form, dtr_phi())),
            ("dtrace_x_oneform", "d(tr phi) (x) psi", lambda: tensor(dtr_phi(), one_form)),
            ("dpsi_circ1_phi", "d psi o_1 phi", lambda: compose(d_psi(), 0, phi1)),
            ("dpsi_circ2_phi", "d psi o_2 phi", lambda: compose(d_psi(), 1, phi1)),
            ("d_psi_circ_phi", "d(psi o phi)", lambda: exterior_derivative(compose(one_form, 0, phi1))),
        ]
    ]
    entries += [
        CatalogEntry(
            "yano_ako_one_form", "tangent_one_form", TANGENT_ONE_FORM, yano_ako_one_form,
            "(L_{phi X} psi - L_X(psi o phi))(Y)",
        ),
        CatalogEntry(
            "lie_derivative_wrt_form", "tangent_one_form", TANGENT_ONE_FORM,
            lambda: lie_derivative(phi1, one_form),
            "L_phi psi = i_phi d psi - d i_phi psi",
        ),
    ]

    psi_dtrace = lambda: tensor(two_tensor, dtr_phi())  # noqa: E731
    for order, name, text in [
        (XYZ, "psi_xy_dtrace_z", "psi(X,Y) d(tr phi)(Z)"),
        (YXZ, "psi_yx_dtrace_z", "psi(Y,X) d(tr phi)(Z)"),
        (XZY, "psi_xz_dtrace_y", "psi(X,Z) d(tr phi)(Y)"),
        (ZXY, "psi_zx_dtrace_y", "psi(Z,X) d(tr phi)(Y)"),
        (YZX, "psi_yz_dtrace_x", "psi(Y,Z) d(tr phi)(X)"),
        (ZYX, "psi_zy_dtrace_x", "psi(Z,Y) d(tr phi)(X)"),
    ]:
        entries.append(CatalogEntry(
            name, "tangent_two_tensor", TANGENT_TWO_TENSOR,
            lambda order=order: reorder(psi_dtrace(), order), text,
        ))
    d_alt_psi = lambda: d_alt(two_tensor)  # noqa: E731
    entries += [
        CatalogEntry(name, "tangent_two_tensor", TANGENT_TWO_TENSOR, build, text)
        for name, text, build in [
            ("trace_d_alt_psi", "(tr phi) d(Alt psi)", lambda: tensor(trace(phi1), d_alt_psi())),
            ("d_alt_psi_circ1_phi", "d(Alt psi) o_1 phi", lambda: compose(d_alt_psi(), 0, phi1)),
            ("d_alt_psi_circ2_phi", "d(Alt psi) o_2 phi", lambda: compose(d_alt_psi(), 1, phi1)),
            ("d_alt_psi_circ3_phi", "d(Alt psi) o_3 phi", lambda: compose(d_alt_psi(), 2, phi1)),
            ("d_alt_of_psi_circ1_phi", "d(Alt(psi o_1 phi))",
             lambda: alternator_derivative(compose(two_tensor, 0, phi1))),
            ("d_alt_of_psi_circ2_phi", "d(Alt(psi o_2 phi))",
             lambda: alternator_derivative(compose(two_tensor, 1, phi1))),
            ("yano_ako_phi1", "Phi_1(phi, psi)", yano_ako_phi1),
            ("yano_ako_phi2", "Phi_2(phi, psi)", yano_ako_phi2),
        ]
    ]
    entries += [
        CatalogEntry(
            "yano_ako_pure", "tangent_two_tensor", TANGENT_TWO_TENSOR, yano_ako_pure,
            "(L_{phi X} psi - L_X(psi o_1 phi))(Y,Z), a tensor for pure pairs",
            natural=False,
        ),
        CatalogEntry(
            "lie_derivative_wrt_form_2form", "tangent_two_tensor", TANGENT_TWO_TENSOR,
            lambda: lie_derivative(phi1, two_tensor),
            "L_phi psi = i_phi d psi - d i_phi psi for a 2-form",
            constraints=ANTISYMMETRIC_PSI,
        ),
    ]

    d_one_form = lambda: exterior_derivative(one_form)  # noqa: E731
    for slot, tag in [(0, "c11"), (1, "c12")]:
        label = "C^1_1 S" if slot == 0 else "C^1_2 S"
        for order, arg, rest in [(XYZ, "x", "Y,Z"), (YXZ, "y", "X,Z"), (ZXY, "z", "X,Y")]:
            entries.append(CatalogEntry(
                f"{tag}_s_{arg}_dpsi", "two_tensor_one_form", TWO_TENSOR_ONE_FORM,
                lambda slot=slot, order=order: reorder(tensor(contracted_s(slot), d_one_form()), order),
                f"({label})({arg.upper()}) d psi({rest})",
            ))
    for order, tag, text in [
        (XYZ, "xy_z", "d psi(S(X,Y),Z)"),
        (YXZ, "yx_z", "d psi(S(Y,X),Z)"),
        (XZY, "xz_y", "d psi(S(X,Z),Y)"),
        (ZXY, "zx_y", "d psi(S(Z,X),Y)"),
        (YZX, "yz_x", "d psi(S(Y,Z),X)"),
        (ZYX, "zy_x", "d psi(S(Z,Y),X)"),
    ]:
        entries.append(CatalogEntry(
            f"dpsi_s_{tag}", "two_tensor_one_form", TWO_TENSOR_ONE_FORM,
            lambda order=order: reorder(_d_psi_s(), order), text,
        ))
    for slot, tag in [(0, "c11"), (1, "c12")]:
        label = "C^1_1 S" if slot == 0 else "C^1_2 S"
        for order, arg, rest in [(XYZ, "x", "Y,Z"), (YXZ, "y", "X,Z"), (ZXY, "z", "X,Y")]:
            entries.append(CatalogEntry(
                f"psi_{arg}_d{tag}_s", "two_tensor_one_form", TWO_TENSOR_ONE_FORM,
                lambda slot=slot, order=order: reorder(
                    tensor(one_form, exterior_derivative(contracted_s(slot))), order
                ),
                f"psi({arg.upper()}) d({label})({rest})",
            ))
    entries += [
        CatalogEntry(
            "d_psi_circ_alt_s", "two_tensor_one_form", TWO_TENSOR_ONE_FORM,
            lambda: exterior_derivative(compose(one_form, 0, alternate_lower(phi_field(2)))),
            "d(psi o Alt S), a 3-form",
        ),
        CatalogEntry(
            "lie_derivative_wrt_s", "two_tensor_one_form", TWO_TENSOR_ONE_FORM,
            lambda: lie_derivative(phi_field(2), one_form),
            "L_S psi = i_S d psi + d i_S psi",
            constraints=ANTISYMMETRIC_S,
        ),
        CatalogEntry(
            "yano_ako_original", "two_tensor_one_form", TWO_TENSOR_ONE_FORM,
            yano_ako_tangent_two_form,
            "Yano-Ako operator of a tangent-valued 2-form and a 1-form",
            constraints=ANTISYMMETRIC_S,
        ),
    ]
    return entries


DEFAULT_GENERATORS: Dict[TensorSignature, List[str]] = {
    VECTOR_FIELDS: ["lie_bracket"],
    VECTOR_ONE_FORM: ["insert_d", "d_of_pairing"],
    VECTOR_TWO_TENSOR: [
        "lie_derivative_02", "lie_derivative_02_transposed",
        "d_of_insertion", "d_of_insertion_transposed",
    ],
    TANGENT_TANGENT: [
        "dtr_phi_x_psi", "psi_x_dtr_phi", "dtr_psi_x_phi", "phi_x_dtr_psi",
        "tr_psi_dtr_phi_x_id", "tr_psi_id_x_dtr_phi", "tr_phi_dtr_psi_x_id", "tr_phi_id_x_dtr_psi",
        "dtr_phi_of_psi_x_id", "id_x_dtr_phi_of_psi", "dtr_psi_of_phi_x_id", "id_x_dtr_psi_of_phi",
        "dtr_phi_psi_x_id", "id_x_dtr_phi_psi", "froelicher_nijenhuis",
    ],
    TANGENT_ONE_FORM: [
        "trace_dpsi", "oneform_x_dtrace", "dtrace_x_oneform",
        "dpsi_circ1_phi", "dpsi_circ2_phi", "d_psi_circ_phi",
    ],
    TANGENT_TWO_TENSOR: [
        "psi_xy_dtrace_z", "psi_yx_dtrace_z", "psi_xz_dtrace_y",
        "psi_zx_dtrace_y", "psi_yz_dtrace_x", "psi_zy_dtrace_x",
        "trace_d_alt_psi", "d_alt_psi_circ1_phi", "d_alt_psi_circ2_phi", "d_alt_psi_circ3_phi",
        "d_alt_of_psi_circ1_phi", "d_alt_of_psi_circ2_phi",
        "yano_ako_phi1", "yano_ako_phi2",
    ],
    TWO_TENSOR_ONE_FORM: [
        "c11_s_x_dpsi", "c11_s_y_dpsi", "c11_s_z_dpsi",
        "c12_s_x_dpsi", "c12_s_y_dpsi", "c12_s_z_dpsi",
        "dpsi_s_xy_z", "dpsi_s_yx_z", "dpsi_s_xz_y", "dpsi_s_zx_y", "dpsi_s_yz_x", "dpsi_s_zy_x",
        "psi_x_dc11_s", "psi_y_dc11_s", "psi_z_dc11_s",
        "psi_x_dc12_s", "psi_y_dc12_s", "psi_z_dc12_s",
        "d_psi_circ_alt_s",
    ],
}


@lru_cache(maxsize=None)
def _registry() -> Dict[str, CatalogEntry]:
    return {entry.name: entry for entry in _entries()}


@lru_cache(maxsize=None)
def _expansion(name: str) -> IndexedExpression:
    return calc.standardize(_registry()[name].build())


class CatalogService(LoggerMixin):
    """Named operators, their expansions and their coordinates in computed bases"""

    @property
    def names(self) -> List[str]:
        return list(_registry())

    def entry(self, name: str) -> CatalogEntry:
        try:
            return _registry()[name]
        except KeyError:
            raise CatalogError("unknown operator", {"name": name})

    def entries(self, family: Optional[str] = None) -> List[CatalogEntry]:
        return [e for e in _registry().values() if family is None or e.family == family]

    def expand(self, name: str, signature: Optional[TensorSignature] = None) -> IndexedExpression:
        """Fully expanded canonical coordinate expression"""
        entry = self.entry(name)
        if signature is not None and signature != entry.signature:
            raise CatalogError(
                "operator is not defined for this signature",
                {"name": name, "signature": signature.label, "defined": entry.signature.label},
            )
        return _expansion(name)

    def default_generators(self, signature: TensorSignature) -> List[str]:
        return list(DEFAULT_GENERATORS.get(signature, []))

    def _vectors(
        self,
        names: Sequence[str],
        signature: TensorSignature,
        constraints: Iterable[SymmetryConstraint],
        alternate: bool,
    ):
        """Coordinates of the named operators over the constrained ansatz"""
        for name in names:
            self.expand(name, signature)
        found = check_constraints(signature, constraints)
        family = ansatz_service.apply_symmetry(ansatz_service.generate(signature), found)
        quotient = ansatz_service.quotient(family, found & INPUT_CONSTRAINTS)
        vectors = []
        for name in names:
            expression = self.expand(name)
            if alternate:
                expression = expression.alternate(expression.lower)
            vectors.append(quotient.vector(expression, family.terms))
        return family, vectors

    def family_rank(
        self,
        names: Sequence[str],
        constraints: Iterable[SymmetryConstraint] = (),
        alternate_output: bool = False,
    ) -> int:
        """Rank of the span of named operators on constrained inputs"""
        if not names:
            return 0
        signature = self.entry(names[0]).signature
        family, vectors = self._vectors(names, signature, constraints, alternate_output)
        rows = [{n: v for n, v in enumerate(vector) if v} for vector in vectors]
        rank = RationalMatrix.from_rows(rows, family.size).rank()
        self.log_operation("family_rank", signature=signature.label, names=len(names), rank=rank)
        return rank

    def match_basis(self, basis: OperatorBasis, names: Sequence[str]) -> ChangeOfBasis:
        """Express each named operator in the computed basis

        Args:
            basis: solution basis of a classification run
            names: catalog names sharing the basis signature

        Returns:
            ChangeOfBasis: coordinates per name, residual witnesses for names
            outside the span, and the inverse matrix when the names form a basis
        """
        family = basis.family
        try:
            _, vectors = self._vectors(names, family.signature, family.constraints, basis.alternated)
        except NaturalOperatorError as e:
            self.log_error(e, "match_basis", signature=family.signature.label)
            raise
        coordinates: Dict[str, List[str]] = {}
        residuals: Dict[str, str] = {}
        matrix_rows: List[List[Fraction]] = []
        for name, vector in zip(names, vectors):
            membership = solve_membership(vector, basis.vectors)
            if membership.in_span:
                coordinates[name] = [fraction_to_text(c) for c in membership.coordinates]
                matrix_rows.append(membership.coordinates)
            else:
                residual = {family.terms[n]: v for n, v in membership.residual.items()}
                upper, lower = family.output
                residuals[name] = format_expression(IndexedExpression(upper, lower, residual))
        rows = [{n: v for n, v in enumerate(vector) if v} for vector in vectors]
        named_rank = RationalMatrix.from_rows(rows, family.size).rank() if rows else 0
        spans_equal = not residuals and named_rank == basis.dimension
        inverse = None
        if spans_equal and len(names) == basis.dimension and basis.dimension:
            inverted = RationalMatrix.from_dense(matrix_rows).inverse().dense()
            inverse = [[fraction_to_text(v) for v in row] for row in inverted]
        self.log_operation(
            "match_basis",
            signature=family.signature.label,
            names=len(names),
            named_rank=named_rank,
            spans_equal=spans_equal,
        )
        return ChangeOfBasis(
            names=list(names),
            basis_dimension=basis.dimension,
            named_rank=named_rank,
            spans_equal=spans_equal,
            coordinates=coordinates,
            inverse=inverse,
            residuals=residuals,
        )


catalog_service = CatalogService()
