"""Degree equation schemas"""

from typing import Dict, List, Optional

from pydantic import Field

from app.schemas.base import BaseSchema, ReportBase
from app.schemas.signature import TensorSignature


class DegreeSolution(BaseSchema):
    """Degrees a_l in the l-th derivatives of phi and b_l in those of psi"""
    a: Dict[int, int] = Field(default_factory=dict)
    b: Dict[int, int] = Field(default_factory=dict)

    @property
    def phi_degree(self) -> int:
        return sum(self.a.values())

    @property
    def psi_degree(self) -> int:
        return sum(self.b.values())

    @property
    def order(self) -> int:
        """Highest derivative order present"""
        orders = [l for l, n in list(self.a.items()) + list(self.b.items()) if n]
        return max(orders) if orders else 0

    @property
    def admissible(self) -> bool:
        """Depends on both fields and contains a derivative"""
        return self.phi_degree >= 1 and self.psi_degree >= 1 and self.order >= 1

    @property
    def label(self) -> str:
        parts = [f"a{l}={n}" for l, n in sorted(self.a.items()) if n]
        parts += [f"b{l}={n}" for l, n in sorted(self.b.items()) if n]
        return ", ".join(parts) or "0"


class OrderCertificate(BaseSchema):
    """The two monomial shapes of a first-order bilinear operator"""
    signature: TensorSignature
    order: int = 1
    shapes: List[str]


class HomogeneityReport(ReportBase):
    """All solutions of the degree equation and the admissible ones"""
    signature: TensorSignature
    max_order: int
    bilinear: bool
    solutions: List[DegreeSolution]
    admissible: List[DegreeSolution]
    certificate: Optional[OrderCertificate] = None
