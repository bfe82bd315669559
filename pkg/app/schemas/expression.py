"""Stable JSON form of indexed expressions"""

import re
from fractions import Fraction
from typing import List

from pydantic import Field, field_validator

from app.core.exceptions import NotationError
from app.models.expression import IndexedExpression
from app.models.notation import format_expression
from app.models.tensor import DUMMY_LETTERS, FREE_LETTERS, Factor, Head, IndexName, dummy, free
from app.schemas.base import BaseSchema

_FALLBACK = re.compile(r"([a-z])(\d+)$")


def index_to_text(name: IndexName) -> str:
    return name.letter


def index_from_text(text: str) -> IndexName:
    """Inverse of IndexName.letter"""
    if len(text) == 1:
        if text in FREE_LETTERS:
            return free(FREE_LETTERS.index(text))
        if text in DUMMY_LETTERS:
            return dummy(DUMMY_LETTERS.index(text))
    match = _FALLBACK.match(text)
    if match and match.group(1) == FREE_LETTERS[0]:
        return free(int(match.group(2)))
    if match and match.group(1) == DUMMY_LETTERS[0]:
        return dummy(int(match.group(2)))
    raise NotationError("unknown index name", {"index": text})


def fraction_to_text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


class FactorRecord(BaseSchema):
    """One factor symbol"""
    head: str
    upper: List[str] = Field(default_factory=list)
    lower: List[str] = Field(default_factory=list)
    label: str = ""

    @field_validator("head")
    @classmethod
    def check_head(cls, v):
        if v not in Head.__members__:
            raise ValueError(f"head must be one of: {', '.join(Head.__members__)}")
        return v

    @classmethod
    def from_factor(cls, factor: Factor) -> "FactorRecord":
        return cls(
            head=factor.head.name,
            upper=[index_to_text(n) for n in factor.upper],
            lower=[index_to_text(n) for n in factor.lower],
            label=factor.label,
        )

    def to_factor(self) -> Factor:
        return Factor(
            Head[self.head],
            tuple(index_from_text(n) for n in self.upper),
            tuple(index_from_text(n) for n in self.lower),
            self.label,
        ).normalized()


class TermRecord(BaseSchema):
    """Coefficient as "p/q" and the factors of one monomial"""
    coefficient: str
    dim_power: int = 0
    factors: List[FactorRecord]

    @field_validator("coefficient")
    @classmethod
    def check_coefficient(cls, v):
        Fraction(v)
        return v


class ExpressionRecord(BaseSchema):
    """Free indices in slot order plus the sorted term list"""
    upper: List[str] = Field(default_factory=list)
    lower: List[str] = Field(default_factory=list)
    terms: List[TermRecord] = Field(default_factory=list)
    text: str = ""

    @classmethod
    def from_expression(cls, expression: IndexedExpression) -> "ExpressionRecord":
        return cls(
            upper=[index_to_text(n) for n in expression.upper],
            lower=[index_to_text(n) for n in expression.lower],
            terms=[
                TermRecord(
                    coefficient=fraction_to_text(value),
                    dim_power=key.dim_power,
                    factors=[FactorRecord.from_factor(f) for f in key.factors],
                )
                for key, value in expression
            ],
            text=format_expression(expression, "ascii"),
        )

    def to_expression(self) -> IndexedExpression:
        return IndexedExpression.from_products(
            [index_from_text(n) for n in self.upper],
            [index_from_text(n) for n in self.lower],
            [
                ([f.to_factor() for f in term.factors], Fraction(term.coefficient), term.dim_power)
                for term in self.terms
            ],
        )
