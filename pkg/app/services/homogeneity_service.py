"""Degree equation and first-order certificate"""

from typing import Iterator, List, Optional, Tuple

from app.core.config import settings
from app.core.exceptions import HypothesisError, InconsistencyError
from app.core.logging import LoggerMixin
from app.schemas.homogeneity import DegreeSolution, HomogeneityReport, OrderCertificate
from app.schemas.signature import TensorSignature

FIRST_ORDER_SHAPES = ["phi*dpsi", "psi*dphi"]
FIRST_ORDER_SOLUTIONS = {((0, 1),), ((1, 0),)}


def _weights(signature: TensorSignature, max_order: int) -> Tuple[List[int], List[int]]:
    p, r, s = signature.phi_p, signature.psi_r, signature.psi_s
    return (
        [p + l - 1 for l in range(max_order + 1)],
        [s - r + l for l in range(max_order + 1)],
    )


def _compositions(weights: List[int], target: int) -> Iterator[List[int]]:
    """Non-negative n with sum(w * n) = target, all weights positive"""
    if not weights:
        if target == 0:
            yield []
        return
    head, rest = weights[0], weights[1:]
    for n in range(target // head + 1):
        for tail in _compositions(rest, target - n * head):
            yield [n] + tail


def _solution(a: List[int], b: List[int]) -> DegreeSolution:
    return DegreeSolution(
        a={l: n for l, n in enumerate(a) if n},
        b={l: n for l, n in enumerate(b) if n},
    )


def _pairs(solution: DegreeSolution) -> Tuple[Tuple[int, int], ...]:
    """(order in phi, order in psi) of a bilinear solution"""
    return tuple(
        (la, lb)
        for la, na in solution.a.items() for lb, nb in solution.b.items()
        if na == 1 and nb == 1
    )


class HomogeneityService(LoggerMixin):
    """Solve sum (p+l-1) a_l + (s-r+l) b_l = s-r+p"""

    def hypotheses_hold(self, signature: TensorSignature) -> bool:
        return signature.phi_p > 1 and signature.psi_s > signature.psi_r

    def solve_degree_equation(
        self,
        signature: TensorSignature,
        max_order: int,
        bilinear: bool = False,
    ) -> List[DegreeSolution]:
        if max_order < 1:
            raise HypothesisError("the order bound must be at least 1", {"max_order": max_order})
        if not bilinear and not self.hypotheses_hold(signature):
            raise HypothesisError(
                "unrestricted search needs p > 1 and s > r, otherwise some weights are not positive; "
                "use the bilinear restriction",
                {"signature": signature.label, "p": signature.phi_p,
                 "r": signature.psi_r, "s": signature.psi_s},
            )
        phi_weights, psi_weights = _weights(signature, max_order)
        target = signature.psi_s - signature.psi_r + signature.phi_p
        solutions: List[DegreeSolution] = []
        if bilinear:
            size = max_order + 1
            for la in range(size):
                for lb in range(size):
                    if phi_weights[la] + psi_weights[lb] == target:
                        a, b = [0] * size, [0] * size
                        a[la], b[lb] = 1, 1
                        solutions.append(_solution(a, b))
        else:
            for vector in _compositions(phi_weights + psi_weights, target):
                solutions.append(_solution(vector[:max_order + 1], vector[max_order + 1:]))
        self.log_operation(
            "solve_degree_equation",
            signature=signature.label,
            max_order=max_order,
            bilinear=bilinear,
            solutions=len(solutions),
        )
        return solutions

    def certify_first_order(
        self,
        signature: TensorSignature,
        max_order: Optional[int] = None,
    ) -> OrderCertificate:
        """Exactly the shapes phi * d psi and psi * d phi survive"""
        max_order = max_order or settings.MAX_ORDER
        bilinear = not self.hypotheses_hold(signature)
        solutions = self.solve_degree_equation(signature, max_order, bilinear=bilinear)
        admissible = [s for s in solutions if s.admissible]
        found = {_pairs(s) for s in admissible}
        if found != FIRST_ORDER_SOLUTIONS or len(admissible) != 2:
            error = InconsistencyError(
                "degree equation admits unexpected solutions",
                {"signature": signature.label, "solutions": [s.label for s in admissible]},
            )
            self.log_error(error, "certify_first_order")
            raise error
        return OrderCertificate(signature=signature, order=1, shapes=list(FIRST_ORDER_SHAPES))

    def report(self, signature: TensorSignature, max_order: int, bilinear: bool) -> HomogeneityReport:
        solutions = self.solve_degree_equation(signature, max_order, bilinear)
        admissible = [s for s in solutions if s.admissible]
        certificate = None
        if {_pairs(s) for s in admissible} == FIRST_ORDER_SOLUTIONS and len(admissible) == 2:
            certificate = OrderCertificate(signature=signature, order=1, shapes=list(FIRST_ORDER_SHAPES))
        return HomogeneityReport(
            signature=signature,
            max_order=max_order,
            bilinear=bilinear,
            solutions=solutions,
            admissible=admissible,
            certificate=certificate,
            success=certificate is not None,
        )


homogeneity_service = HomogeneityService()
