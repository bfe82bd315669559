"""Operator signatures and symmetry constraints"""

from enum import Enum
from typing import FrozenSet, Iterable, List

from pydantic import ConfigDict, Field

from app.core.exceptions import SignatureError
from app.schemas.base import BaseSchema


class SymmetryConstraint(str, Enum):
    """Symmetry imposed on an input field or on the output"""
    PSI_SYMMETRIC = "psi_symmetric"
    PSI_ANTISYMMETRIC = "psi_antisymmetric"
    PSI_CLOSED_FORM = "psi_closed_form"
    PHI_ANTISYMMETRIC = "phi_antisymmetric"
    OUTPUT_ALTERNATING = "output_alternating"


# constraints that relate input components rather than project the output
INPUT_CONSTRAINTS = frozenset({
    SymmetryConstraint.PSI_SYMMETRIC,
    SymmetryConstraint.PSI_ANTISYMMETRIC,
    SymmetryConstraint.PSI_CLOSED_FORM,
    SymmetryConstraint.PHI_ANTISYMMETRIC,
})


class TensorSignature(BaseSchema):
    """phi of type (1, p) and psi of type (r, s), mapped into (r, s + p)"""

    model_config = ConfigDict(frozen=True, protected_namespaces=())

    phi_p: int = Field(ge=0)
    psi_r: int = Field(ge=0)
    psi_s: int = Field(ge=0)

    @property
    def out_contra(self) -> int:
        return self.psi_r

    @property
    def out_cov(self) -> int:
        return self.psi_s + self.phi_p

    @property
    def slot_count(self) -> int:
        """Size of each side of the index matching, r + s + p + 1"""
        return self.psi_r + self.psi_s + self.phi_p + 1

    @property
    def label(self) -> str:
        return f"(1,{self.phi_p})x({self.psi_r},{self.psi_s})->({self.out_contra},{self.out_cov})"

    def __str__(self) -> str:
        return self.label


def check_constraints(
    signature: TensorSignature,
    constraints: Iterable[SymmetryConstraint],
) -> FrozenSet[SymmetryConstraint]:
    """Validate a constraint set against a signature"""
    found = frozenset(SymmetryConstraint(c) for c in constraints)
    r, s = signature.psi_r, signature.psi_s
    problems: List[str] = []
    if SymmetryConstraint.PSI_SYMMETRIC in found and sorted((r, s)) != [0, 2]:
        problems.append("symmetric psi needs two slots of one variance")
    if SymmetryConstraint.PSI_ANTISYMMETRIC in found and not (min(r, s) == 0 and max(r, s) >= 2):
        problems.append("antisymmetric psi needs at least two slots of one variance")
    if SymmetryConstraint.PSI_CLOSED_FORM in found and not (r == 0 and s >= 1):
        problems.append("closed psi must be a differential form")
    if SymmetryConstraint.PHI_ANTISYMMETRIC in found and signature.phi_p < 2:
        problems.append("a tangent-valued form needs at least two lower slots")
    if SymmetryConstraint.OUTPUT_ALTERNATING in found and signature.out_cov < 2:
        problems.append("alternating output needs at least two lower slots")
    if SymmetryConstraint.PSI_SYMMETRIC in found and found & {
        SymmetryConstraint.PSI_ANTISYMMETRIC, SymmetryConstraint.PSI_CLOSED_FORM
    }:
        problems.append("psi cannot be both symmetric and a form")
    if problems:
        raise SignatureError(
            "; ".join(problems),
            {"signature": signature.label, "constraints": sorted(c.value for c in found)},
        )
    return found
