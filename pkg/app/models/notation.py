"""Einstein index notation: parsing and printing of expressions"""

import re
from collections import Counter
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from app.core.exceptions import NotationError, SignatureError, StructuralError
from app.models.expression import IndexedExpression
from app.models.monomial import Monomial
from app.models.tensor import (
    ARGUMENT_LABELS,
    FREE_LETTERS,
    Factor,
    Head,
    IndexName,
    dummy,
    free,
)

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<number>\d+(?:/\d+)?)"
    r"|(?P<symbol>[A-Za-zφψδ]+(?:\^[A-Za-z]+)?(?:_[A-Za-z]*)?(?:,[A-Za-z])?)"
    r"|(?P<op>[-+*()])"
    r")"
)
_SYMBOL = re.compile(
    r"(?P<name>[A-Za-zφψδ]+?)(?:\^(?P<upper>[A-Za-z]+))?(?:_(?P<lower>[A-Za-z]*))?(?:,(?P<deriv>[A-Za-z]))?$"
)
_NAMES = {
    "phi": Head.PHI, "φ": Head.PHI,
    "psi": Head.PSI, "ψ": Head.PSI,
    "delta": Head.DELTA, "δ": Head.DELTA,
    "K": Head.CONN,
}

# (head name, letters up, letters down, derivative letter, argument label)
RawFactor = Tuple[Head, str, str, str, str]
RawTerm = Tuple[Fraction, List[RawFactor], int]


def _tokens(text: str) -> List[Tuple[str, str]]:
    tokens, position = [], 0
    text = text.strip()
    while position < len(text):
        match = _TOKEN.match(text, position)
        if not match or match.end() == position:
            raise NotationError("unexpected character in notation", {"position": position, "text": text})
        kind = match.lastgroup
        tokens.append((kind, match.group(kind)))
        position = match.end()
        while position < len(text) and text[position].isspace():
            position += 1
    return tokens


def _raw_symbol(token: str) -> Tuple[Optional[RawFactor], int]:
    """Parse one symbol token; returns (factor, dim power)"""
    if token == "dim":
        return None, 1
    match = _SYMBOL.match(token)
    if not match:
        raise NotationError("malformed symbol", {"symbol": token})
    name = match.group("name")
    upper, lower, deriv = match.group("upper") or "", match.group("lower") or "", match.group("deriv") or ""
    if name in ARGUMENT_LABELS:
        if len(upper) != 1 or lower:
            raise NotationError("vector arguments carry exactly one upper index", {"symbol": token})
        return (Head.ARG, upper, lower, deriv, name), 0
    head = _NAMES.get(name)
    if head is None:
        raise NotationError("unknown symbol", {"symbol": token})
    if head == Head.DELTA and (len(upper), len(lower), deriv) != (1, 1, ""):
        raise NotationError("delta takes one upper and one lower index", {"symbol": token})
    if head == Head.CONN and (len(upper), len(lower), deriv) != (1, 2, ""):
        raise NotationError("connection symbol takes one upper and two lower indices", {"symbol": token})
    if head == Head.PHI and len(upper) != 1:
        raise NotationError("phi carries exactly one upper index", {"symbol": token})
    return (head, upper, lower, deriv, ""), 0


class _Parser:
    """Recursive descent over sums and products, distributing into flat terms"""

    def __init__(self, tokens: List[Tuple[str, str]]):
        self.tokens = tokens
        self.position = 0

    def peek(self) -> Tuple[str, str]:
        return self.tokens[self.position] if self.position < len(self.tokens) else ("end", "")

    def take(self) -> Tuple[str, str]:
        token = self.peek()
        self.position += 1
        return token

    def parse(self) -> List[RawTerm]:
        terms = self.sum()
        if self.peek()[0] != "end":
            raise NotationError("trailing input", {"token": self.peek()[1]})
        return terms

    def sum(self) -> List[RawTerm]:
        sign = Fraction(1)
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = Fraction(-1) if self.take()[1] == "-" else Fraction(1)
        terms = [(c * sign, f, d) for c, f, d in self.product()]
        while self.peek() in (("op", "-"), ("op", "+")):
            sign = Fraction(-1) if self.take()[1] == "-" else Fraction(1)
            terms.extend((c * sign, f, d) for c, f, d in self.product())
        return terms

    def product(self) -> List[RawTerm]:
        terms = self.atom()
        while True:
            kind, value = self.peek()
            if (kind, value) == ("op", "*"):
                self.take()
            elif kind not in ("number", "symbol") and (kind, value) != ("op", "("):
                return terms
            right = self.atom()
            terms = [(a * b, fa + fb, da + db) for a, fa, da in terms for b, fb, db in right]

    def atom(self) -> List[RawTerm]:
        kind, value = self.take()
        if kind == "number":
            return [(Fraction(value), [], 0)]
        if kind == "symbol":
            factor, power = _raw_symbol(value)
            return [(Fraction(1), [factor] if factor else [], power)]
        if (kind, value) == ("op", "("):
            inner = self.sum()
            if self.take() != ("op", ")"):
                raise NotationError("unbalanced parenthesis")
            return inner
        raise NotationError("unexpected token", {"token": value or kind})


def _resolve(raw: List[RawFactor]) -> Tuple[List[Factor], List[IndexName], List[IndexName]]:
    """Turn letters into free or dummy indices for one flat term"""
    ups, downs = Counter(), Counter()
    for head, upper, lower, deriv, _ in raw:
        ups.update(upper)
        downs.update(lower + deriv)
    names: Dict[str, IndexName] = {}
    dummies = 0
    free_upper, free_lower = [], []
    for letter in sorted(set(ups) | set(downs)):
        up, down = ups[letter], downs[letter]
        if (up, down) == (1, 1):
            names[letter] = dummy(dummies)
            dummies += 1
        elif up + down == 1:
            if letter not in FREE_LETTERS:
                raise NotationError("free indices use the letters " + FREE_LETTERS, {"letter": letter})
            names[letter] = free(FREE_LETTERS.index(letter))
            (free_upper if up else free_lower).append(names[letter])
        else:
            raise NotationError("index used inconsistently", {"letter": letter, "upper": up, "lower": down})
    factors = []
    for head, upper, lower, deriv, label in raw:
        factor = Factor(head, tuple(names[c] for c in upper), tuple(names[c] for c in lower), label)
        if deriv:
            factor = factor.differentiated(names[deriv])
        factors.append(factor.normalized())
    return factors, sorted(free_upper), sorted(free_lower)


def parse(text: str, upper: Optional[str] = None, lower: Optional[str] = None) -> IndexedExpression:
    """Parse notation like "phi^m_i psi_jk,m - 2/3 psi_ij,k phi^m_m"

    A letter used once in a term is free, a letter used once upper and once lower is
    summed. upper and lower optionally declare the free index letters in slot order.
    """
    try:
        terms = _Parser(_tokens(text)).parse()
        declared_upper = tuple(free(FREE_LETTERS.index(c)) for c in upper) if upper is not None else None
        declared_lower = tuple(free(FREE_LETTERS.index(c)) for c in lower) if lower is not None else None
    except StructuralError:
        raise
    except (IndexError, ValueError, ZeroDivisionError) as e:
        raise NotationError("could not parse notation", {"text": text, "reason": str(e)})
    products = []
    for coefficient, raw, power in terms:
        factors, found_upper, found_lower = _resolve(raw)
        if declared_upper is None:
            declared_upper = tuple(found_upper)
        if declared_lower is None:
            declared_lower = tuple(found_lower)
        if set(found_upper) != set(declared_upper) or set(found_lower) != set(declared_lower):
            raise SignatureError("terms disagree on free indices", {"text": text})
        products.append((factors, coefficient, power))
    return IndexedExpression.from_products(declared_upper or (), declared_lower or (), products)


_UNICODE = {Head.PHI: "φ", Head.PSI: "ψ", Head.DELTA: "δ", Head.CONN: "K"}
_ASCII = {Head.PHI: "phi", Head.PSI: "psi", Head.DELTA: "delta", Head.CONN: "K"}


def _letters(names: Sequence[IndexName]) -> str:
    return "".join(name.letter for name in names)


def format_factor(factor: Factor, style: str = "unicode") -> str:
    """One factor in the chosen style"""
    base = factor.underived()
    if base.head == Head.ARG:
        name = base.label
    else:
        name = (_UNICODE if style == "unicode" else _ASCII)[base.head]
    if base.head == Head.CONN and style == "unicode":
        # printed as K_a^p_b
        text = f"K_{base.lower[0].letter}^{_letters(base.upper)}_{base.lower[1].letter}"
    else:
        text = name
        if base.upper:
            text += "^" + _letters(base.upper)
        if base.lower:
            text += "_" + _letters(base.lower)
    if factor.is_derivative:
        if style == "unicode":
            return f"∂_{factor.derivative_index.letter} {text}"
        return f"{text},{factor.derivative_index.letter}"
    return text


def format_monomial(key: Monomial, style: str = "unicode") -> str:
    parts = [format_factor(factor, style) for factor in _display_order(key.factors)]
    parts.extend(["dim"] * key.dim_power)
    return " ".join(parts) if parts else "1"


def _display_order(factors: Sequence[Factor]) -> List[Factor]:
    """Underived factors first, the way coordinate formulas are usually written"""
    return sorted(factors, key=lambda f: (f.is_derivative, f.head == Head.CONN, f))


def _coefficient(value: Fraction) -> str:
    magnitude = abs(value)
    if magnitude == 1:
        return ""
    if magnitude.denominator == 1:
        return f"{magnitude.numerator} "
    return f"{magnitude.numerator}/{magnitude.denominator} "


def format_expression(expression: IndexedExpression, style: str = "unicode") -> str:
    """Expression as a signed sum of monomials"""
    if expression.is_zero():
        return "0"
    minus = "−" if style == "unicode" else "-"
    pieces = []
    for n, (key, value) in enumerate(expression):
        sign = minus if value < 0 else "+"
        body = _coefficient(value) + format_monomial(key, style)
        if n == 0:
            pieces.append(body if value > 0 else f"{minus}{body}")
        else:
            pieces.append(f"{sign} {body}")
    return " ".join(pieces)
