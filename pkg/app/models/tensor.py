"""Index names and factor symbols of the tensor expression language"""

from enum import IntEnum
from typing import Callable, Iterator, NamedTuple, Tuple

from app.core.exceptions import StructuralError

FREE_LETTERS = "ijklabcdefgh"
DUMMY_LETTERS = "mpqtuvwxyzno"


class IndexKind(IntEnum):
    """Free indices belong to the signature, dummies are summed"""
    FREE = 0
    DUMMY = 1


class IndexName(NamedTuple):
    """Abstract index: kind plus ordinal"""
    kind: IndexKind
    ordinal: int

    @property
    def is_free(self) -> bool:
        return self.kind == IndexKind.FREE

    @property
    def letter(self) -> str:
        letters = FREE_LETTERS if self.is_free else DUMMY_LETTERS
        if self.ordinal < len(letters):
            return letters[self.ordinal]
        return f"{letters[0]}{self.ordinal}"


def free(ordinal: int) -> IndexName:
    """Free index with the given ordinal"""
    return IndexName(IndexKind.FREE, ordinal)


def dummy(ordinal: int) -> IndexName:
    """Dummy index with the given ordinal"""
    return IndexName(IndexKind.DUMMY, ordinal)


class Head(IntEnum):
    """Factor heads in canonical rank order"""
    DELTA = 0
    PHI = 1
    PSI = 2
    DPHI = 3
    DPSI = 4
    CONN = 5
    ARG = 6
    DARG = 7


DERIVATIVE_OF = {Head.PHI: Head.DPHI, Head.PSI: Head.DPSI, Head.ARG: Head.DARG}
BASE_OF = {value: key for key, value in DERIVATIVE_OF.items()}
FIELD_HEADS = frozenset({Head.PHI, Head.PSI})
ARGUMENT_LABELS = ("X", "Y", "Z", "W")


class Factor(NamedTuple):
    """One component symbol; derivative heads store the derivative index last in lower"""
    head: Head
    upper: Tuple[IndexName, ...]
    lower: Tuple[IndexName, ...]
    label: str = ""

    @property
    def is_derivative(self) -> bool:
        return self.head in BASE_OF

    @property
    def derivative_index(self) -> IndexName:
        if not self.is_derivative:
            raise StructuralError("factor carries no derivative index", {"head": self.head.name})
        return self.lower[-1]

    @property
    def base_lower(self) -> Tuple[IndexName, ...]:
        """Lower indices of the underlying field, derivative index excluded"""
        return self.lower[:-1] if self.is_derivative else self.lower

    def indices(self) -> Iterator[Tuple[IndexName, bool]]:
        """Yield (index, is_upper) pairs"""
        for name in self.upper:
            yield name, True
        for name in self.lower:
            yield name, False

    def renamed(self, rename: Callable[[IndexName], IndexName]) -> "Factor":
        return Factor(
            self.head,
            tuple(rename(name) for name in self.upper),
            tuple(rename(name) for name in self.lower),
            self.label,
        ).normalized()

    def normalized(self) -> "Factor":
        """Connection symbols are symmetric in their lower pair"""
        if self.head == Head.CONN and self.lower[0] > self.lower[1]:
            return Factor(self.head, self.upper, (self.lower[1], self.lower[0]), self.label)
        return self

    def differentiated(self, index: IndexName) -> "Factor":
        """Partial derivative of an underived field factor"""
        head = DERIVATIVE_OF.get(self.head)
        if head is None:
            raise StructuralError(
                "only underived field factors can be differentiated",
                {"head": self.head.name},
            )
        return Factor(head, self.upper, self.lower + (index,), self.label)

    def underived(self) -> "Factor":
        """Field factor with the derivative index dropped"""
        if not self.is_derivative:
            return self
        return Factor(BASE_OF[self.head], self.upper, self.lower[:-1], self.label)

    def with_base_indices(
        self,
        upper: Tuple[IndexName, ...],
        lower: Tuple[IndexName, ...],
    ) -> "Factor":
        """Replace the field indices, keeping any derivative index"""
        if self.is_derivative:
            return Factor(self.head, upper, lower + (self.lower[-1],), self.label)
        return Factor(self.head, upper, lower, self.label).normalized()


def delta(upper: IndexName, lower: IndexName) -> Factor:
    return Factor(Head.DELTA, (upper,), (lower,))


def connection(derivative: IndexName, upper: IndexName, lower: IndexName) -> Factor:
    """Connection symbol K_d^u_l"""
    return Factor(Head.CONN, (upper,), (derivative, lower)).normalized()
