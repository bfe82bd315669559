"""Regression fixture schemas"""

from typing import Dict, List, Literal

from pydantic import Field, field_validator

from app.schemas.base import BaseSchema, ReportBase
from app.schemas.signature import SymmetryConstraint, TensorSignature


class FamilyRankCheck(BaseSchema):
    """Rank of a set of named operators on constrained inputs"""
    names: List[str]
    constraints: List[SymmetryConstraint] = Field(default_factory=list)
    alternate_output: bool = False
    rank: int = Field(ge=0)


class RegressionFixture(BaseSchema):
    """Expected outcome of one classification

    listing maps source labels (a1, b2, ...) to monomials in index notation;
    relations are linear combinations of those labels, e.g. "a1+a3-b3".
    """
    name: str
    description: str = ""
    signature: TensorSignature
    constraints: List[SymmetryConstraint] = Field(default_factory=list)
    dimension: int = Field(ge=0)
    listing: Dict[str, str] = Field(default_factory=dict)
    relations: List[str] = Field(default_factory=list)
    relations_mode: Literal["equivalent", "implied"] = "equivalent"
    catalog: List[str] = Field(default_factory=list)
    family_ranks: List[FamilyRankCheck] = Field(default_factory=list)
    derived: bool = False

    @field_validator("relations")
    @classmethod
    def check_relations(cls, v):
        if any(not relation.strip() for relation in v):
            raise ValueError("relations must not be empty")
        return v


class FixtureOutcome(BaseSchema):
    name: str
    passed: bool
    dimension: int
    problems: List[str] = Field(default_factory=list)


class RegressionReport(ReportBase):
    outcomes: List[FixtureOutcome]

    @property
    def failed(self) -> List[FixtureOutcome]:
        return [outcome for outcome in self.outcomes if not outcome.passed]
