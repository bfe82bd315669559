"""Catalog listing schemas"""

from typing import List

from pydantic import Field

from app.schemas.base import BaseSchema, ReportBase
from app.schemas.expression import ExpressionRecord
from app.schemas.signature import SymmetryConstraint, TensorSignature


class CatalogEntryRecord(BaseSchema):
    name: str
    family: str
    description: str
    signature: TensorSignature
    constraints: List[SymmetryConstraint] = Field(default_factory=list)
    natural: bool = True
    expansion: ExpressionRecord


class CatalogListing(ReportBase):
    entries: List[CatalogEntryRecord]
