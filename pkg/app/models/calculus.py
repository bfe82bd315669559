"""Tensor calculus on indexed expressions

Every operator here works on slots: the free upper indices in tuple order, then the
free lower indices in tuple order. Results are returned standardized, uppers named
i, j, ... first and lowers after them.
"""

from fractions import Fraction
from math import factorial
from typing import List, Optional, Sequence

from app.core.exceptions import SignatureError
from app.models.expression import IndexedExpression
from app.models.monomial import Monomial
from app.models.tensor import Factor, Head, IndexKind, IndexName, free


def standardize(
    expression: IndexedExpression,
    upper: Optional[Sequence[IndexName]] = None,
    lower: Optional[Sequence[IndexName]] = None,
) -> IndexedExpression:
    """Rename free indices to consecutive ordinals following the given slot order"""
    upper = tuple(expression.upper if upper is None else upper)
    lower = tuple(expression.lower if lower is None else lower)
    if set(upper) != set(expression.upper) or set(lower) != set(expression.lower):
        raise SignatureError("slot order must list the free indices")
    mapping = {name: free(n) for n, name in enumerate(upper + lower)}
    renamed = expression.rename(mapping)
    return IndexedExpression(
        tuple(mapping[name] for name in upper),
        tuple(mapping[name] for name in lower),
        renamed.terms,
    )


def _shifted(expression: IndexedExpression, offset: int) -> IndexedExpression:
    mapping = {name: free(name.ordinal + offset) for name in expression.upper + expression.lower}
    return expression.rename(mapping)


def field(head: Head, upper: int, lower: int, label: str = "") -> IndexedExpression:
    """A bare field with standardized slots"""
    factor = Factor(
        head,
        tuple(free(n) for n in range(upper)),
        tuple(free(upper + n) for n in range(lower)),
        label,
    )
    return IndexedExpression.from_factors(
        [factor], upper=factor.upper, lower=factor.lower
    )


def phi_field(p: int) -> IndexedExpression:
    """The (1,p) input field"""
    return field(Head.PHI, 1, p)


def psi_field(r: int, s: int) -> IndexedExpression:
    """The (r,s) input field"""
    return field(Head.PSI, r, s)


def argument(label: str) -> IndexedExpression:
    """A labelled vector field argument"""
    return field(Head.ARG, 1, 0, label)


def identity() -> IndexedExpression:
    """The identity endomorphism delta^i_j"""
    return field(Head.DELTA, 1, 1)


def tensor(left: IndexedExpression, right: IndexedExpression) -> IndexedExpression:
    """Tensor product; right's slots follow left's"""
    left = standardize(left)
    right = _shifted(standardize(right), len(left.upper) + len(left.lower))
    product = left.multiply(right)
    return standardize(product, left.upper + right.upper, left.lower + right.lower)


def compose(target: IndexedExpression, slot: int, inserted: IndexedExpression) -> IndexedExpression:
    """Feed a (1,l) tensor into one lower slot: the slot is replaced by its l lower slots"""
    target = standardize(target)
    inserted = standardize(inserted)
    if len(inserted.upper) != 1:
        raise SignatureError("only vector-valued tensors can be inserted", {"valence": inserted.valence})
    if not 0 <= slot < len(target.lower):
        raise SignatureError("no such lower slot", {"slot": slot, "valence": target.valence})
    hole = target.lower[slot]
    offset = len(target.upper) + len(target.lower)
    mapping = {inserted.upper[0]: hole}
    mapping.update({name: free(offset + n) for n, name in enumerate(inserted.lower)})
    moved = inserted.rename(mapping)
    product = target.multiply(moved)
    lower = target.lower[:slot] + moved.lower + target.lower[slot + 1:]
    return standardize(product, target.upper, lower)


def trace(expression: IndexedExpression, upper_slot: int = 0, lower_slot: int = 0) -> IndexedExpression:
    expression = standardize(expression)
    contracted = expression.contract(expression.upper[upper_slot], expression.lower[lower_slot])
    return standardize(contracted)


def reorder(expression: IndexedExpression, order: Sequence[int]) -> IndexedExpression:
    """R with R(x_0, ..., x_n) = T(x_order[0], ..., x_order[n]) on the lower slots"""
    expression = standardize(expression)
    names = expression.lower
    if sorted(order) != list(range(len(names))):
        raise SignatureError("order must permute the lower slots", {"order": list(order)})
    renamed = expression.rename({names[n]: names[order[n]] for n in range(len(names))})
    return IndexedExpression(renamed.upper, names, renamed.terms)


def transpose(expression: IndexedExpression, first: int = 0, second: int = 1) -> IndexedExpression:
    order = list(range(len(expression.lower)))
    order[first], order[second] = order[second], order[first]
    return reorder(expression, order)


def alternate_lower(expression: IndexedExpression) -> IndexedExpression:
    """Alt over all lower slots"""
    expression = standardize(expression)
    if len(expression.lower) < 2:
        return expression
    return expression.alternate(expression.lower)


def symmetrize_lower(expression: IndexedExpression) -> IndexedExpression:
    expression = standardize(expression)
    if len(expression.lower) < 2:
        return expression
    return expression.symmetrize(expression.lower)


def partial(expression: IndexedExpression) -> IndexedExpression:
    """Partial derivative; the derivative slot becomes the first lower slot"""
    expression = standardize(expression)
    index = free(len(expression.upper) + len(expression.lower))
    derived = expression.differentiate(index)
    return standardize(derived, expression.upper, (index,) + expression.lower)


def exterior_derivative(form: IndexedExpression) -> IndexedExpression:
    """(d w)_{i0..ik} = sum_a (-1)^a d_{ia} w_{i0..^ia..ik}"""
    if form.upper:
        raise SignatureError("exterior derivative needs a covariant tensor", {"valence": form.valence})
    derived = partial(form)
    degree = len(derived.lower)
    total = IndexedExpression.zero(derived.upper, derived.lower)
    for a in range(degree):
        order = [a] + [n for n in range(degree) if n != a]
        total = total + reorder(derived, order).scale((-1) ** a)
    return total


def alternator_derivative(form: IndexedExpression) -> IndexedExpression:
    """Alt of the partial derivative, the exterior derivative divided by k+1 on k-forms"""
    if form.upper:
        raise SignatureError("exterior derivative needs a covariant tensor", {"valence": form.valence})
    return alternate_lower(partial(form))


def insertion(vector_form: IndexedExpression, form: IndexedExpression) -> IndexedExpression:
    """Insertion i_K w of a tangent-valued l-form into a k-form

    i_K w (X_1, ...) = 1/(l!(k-1)!) sum_s sign(s) w(K(X_s1, .., X_sl), X_s(l+1), ...)
    """
    vector_form = standardize(vector_form)
    form = standardize(form)
    ell, k = len(vector_form.lower), len(form.lower)
    if form.upper or k == 0:
        raise SignatureError("insertion needs a form of positive degree", {"valence": form.valence})
    weight = Fraction(factorial(k + ell - 1), factorial(ell) * factorial(k - 1))
    return alternate_lower(compose(form, 0, vector_form)).scale(weight)


def lie_derivative(vector_form: IndexedExpression, form: IndexedExpression) -> IndexedExpression:
    """L_K = [i_K, d] = i_K d - (-1)^(l-1) d i_K"""
    ell = len(standardize(vector_form).lower)
    first = insertion(vector_form, exterior_derivative(form))
    second = exterior_derivative(insertion(vector_form, form))
    return first + second.scale((-1) ** ell)


def lie_derivative_covariant(vector: IndexedExpression, target: IndexedExpression) -> IndexedExpression:
    """Coordinate Lie derivative of a covariant tensor along a vector field"""
    target = standardize(target)
    total = compose(partial(target), 0, vector)
    gradient = partial(vector)
    for slot in range(len(target.lower)):
        total = total + compose(target, slot, gradient)
    return total


# Vector field arguments


def evaluate_on(expression: IndexedExpression, vectors: Sequence[IndexedExpression]) -> IndexedExpression:
    """Feed vector fields into all lower slots"""
    expression = standardize(expression)
    if len(vectors) != len(expression.lower):
        raise SignatureError(
            "argument count must match the lower slots",
            {"arguments": len(vectors), "valence": expression.valence},
        )
    for vector in vectors:
        expression = compose(expression, 0, vector)
    return expression


def bracket(first: IndexedExpression, second: IndexedExpression) -> IndexedExpression:
    """Lie bracket of vector fields"""
    return compose(partial(second), 0, first) - compose(partial(first), 0, second)


def directional(vector: IndexedExpression, scalar: IndexedExpression) -> IndexedExpression:
    """X.f"""
    return compose(partial(scalar), 0, vector)


def lie_derivative_on(
    vector: IndexedExpression,
    target: IndexedExpression,
    arguments: Sequence[IndexedExpression],
) -> IndexedExpression:
    """(L_X T)(Y_1, ...) = X.T(Y_1, ...) - sum_a T(.., [X, Y_a], ..)"""
    total = directional(vector, evaluate_on(target, arguments))
    for slot, argument_field in enumerate(arguments):
        moved = list(arguments)
        moved[slot] = bracket(vector, argument_field)
        total = total - evaluate_on(target, moved)
    return total


def components(expression: IndexedExpression, labels: Sequence[str]) -> IndexedExpression:
    """Coordinate tensor of an expression written with vector field arguments

    Terms with derivatives of arguments are dropped (constant arguments); each
    argument's index becomes a new lower slot in label order.
    """
    expression = standardize(expression)
    start = len(expression.upper) + len(expression.lower)
    slots = tuple(free(start + n) for n in range(len(labels)))

    def transform(key: Monomial):
        if any(factor.head == Head.DARG for factor in key.factors):
            return []
        kept: List[Factor] = []
        binding = {}
        for factor in key.factors:
            if factor.head != Head.ARG:
                kept.append(factor)
                continue
            if factor.label not in labels or factor.label in binding.values():
                raise SignatureError("argument must occur once per term", {"label": factor.label})
            index = factor.upper[0]
            if index.kind != IndexKind.DUMMY:
                raise SignatureError("argument index must be contracted", {"label": factor.label})
            binding[index] = factor.label
        if len(binding) != len(labels):
            raise SignatureError("every argument must occur in every term", {"labels": list(labels)})
        mapping = {index: slots[labels.index(label)] for index, label in binding.items()}
        return [(tuple(f.renamed(lambda n: mapping.get(n, n)) for f in kept), 1, key.dim_power)]

    return expression.map_terms(transform, lower=expression.lower + slots)
