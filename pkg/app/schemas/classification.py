"""Classification report schemas"""

from typing import Dict, List, Optional

from pydantic import Field

from app.schemas.base import BaseSchema, ReportBase
from app.schemas.expression import ExpressionRecord
from app.schemas.signature import SymmetryConstraint, TensorSignature


class AnsatzTerm(BaseSchema):
    """One unknown with its monomial"""
    id: str
    text: str
    source_label: Optional[str] = None


class SystemStats(BaseSchema):
    unknowns: int
    rows: int
    rank: int
    nullity: int


class BasisElement(BaseSchema):
    """One nullspace vector as coefficients and as an operator"""
    coefficients: Dict[str, str]
    expression: ExpressionRecord


class ChangeOfBasis(BaseSchema):
    """Named operators expressed in the computed basis

    coordinates[n] lists the coordinates of names[n]; inverse is present when
    the named operators form a basis of the same span.
    """
    names: List[str]
    basis_dimension: int
    named_rank: int
    spans_equal: bool
    coordinates: Dict[str, List[str]] = Field(default_factory=dict)
    inverse: Optional[List[List[str]]] = None
    residuals: Dict[str, str] = Field(default_factory=dict)


class ClassificationReport(ReportBase):
    """Outcome of one classification run"""
    signature: TensorSignature
    constraints: List[SymmetryConstraint] = Field(default_factory=list)
    ansatz_size: int
    terms: List[AnsatzTerm] = Field(default_factory=list)
    system: SystemStats
    dimension: int
    basis: List[BasisElement] = Field(default_factory=list)
    matches: Optional[ChangeOfBasis] = None
    timing_seconds: float = 0.0
