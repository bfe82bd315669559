"""Naturality and identity check reports"""

from typing import List, Optional

from app.schemas.base import BaseSchema, ReportBase


class Witness(BaseSchema):
    """First component where the two sides of a naturality check differ"""
    trial: int
    component: List[int]
    expected: str
    actual: str


class NaturalityReport(ReportBase):
    operator: str
    trials: int
    seed: int
    dim: int
    passed: bool
    pure: bool = False
    witness: Optional[Witness] = None


class IdentityResult(BaseSchema):
    name: str
    group: str
    description: str
    passed: bool
    residual: Optional[str] = None


class IdentitySuiteReport(ReportBase):
    suite: str
    results: List[IdentityResult]

    @property
    def failed(self) -> List[IdentityResult]:
        return [result for result in self.results if not result.passed]


class VerificationReport(ReportBase):
    """Naturality reports of one verify run"""
    reports: List[NaturalityReport]

    @property
    def failed(self) -> List[NaturalityReport]:
        return [report for report in self.reports if not report.passed]
