"""End-to-end classification of one signature"""

import time
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from app.core.exceptions import NaturalOperatorError
from app.core.logging import LoggerMixin
from app.models.ansatz import AnsatzFamily
from app.models.monomial import Monomial
from app.models.notation import format_monomial
from app.models.system import ConstraintSystem, OperatorBasis
from app.schemas.classification import (
    AnsatzTerm,
    BasisElement,
    ClassificationReport,
    SystemStats,
)
from app.schemas.expression import ExpressionRecord, fraction_to_text
from app.schemas.signature import SymmetryConstraint, TensorSignature, check_constraints
from app.services.ansatz_service import ansatz_service
from app.services.catalog_service import catalog_service
from app.services.connection_service import connection_service

Classification = Tuple[AnsatzFamily, ConstraintSystem, OperatorBasis]


@lru_cache(maxsize=None)
def _classify(
    signature: TensorSignature,
    constraints: FrozenSet[SymmetryConstraint],
    sign: int,
) -> Classification:
    family = ansatz_service.generate(signature)
    if constraints:
        family = ansatz_service.apply_symmetry(family, constraints)
    system = connection_service.extract_system(family, sign)
    basis = connection_service.solve(system, family)
    connection_service.check_soundness(basis)
    return family, system, basis


class ClassificationService(LoggerMixin):
    """Ansatz, connection system and nullspace for one signature and constraint set"""

    def classify(
        self,
        signature: TensorSignature,
        constraints: Iterable[SymmetryConstraint] = (),
        sign: int = 1,
    ) -> Classification:
        found = check_constraints(signature, constraints)
        try:
            family, system, basis = _classify(signature, found, sign)
        except NaturalOperatorError as e:
            self.log_error(e, "classify", signature=signature.label)
            raise
        self.log_operation(
            "classify",
            signature=signature.label,
            constraints=sorted(c.value for c in found),
            unknowns=family.size,
            rank=basis.rank,
            dimension=basis.dimension,
        )
        return family, system, basis

    def dimension(
        self,
        signature: TensorSignature,
        constraints: Iterable[SymmetryConstraint] = (),
    ) -> int:
        return self.classify(signature, constraints)[2].dimension

    def report(
        self,
        signature: TensorSignature,
        constraints: Iterable[SymmetryConstraint] = (),
        names: Optional[Sequence[str]] = None,
        sign: int = 1,
        listing: Optional[Mapping[str, Monomial]] = None,
    ) -> ClassificationReport:
        """Full report; names default to the catalog generators of the signature

        listing attaches source labels (label -> monomial) to the ansatz terms.
        """
        started = time.perf_counter()
        family, system, basis = self.classify(signature, constraints, sign)
        if listing:
            family = ansatz_service.aligned(family, listing)
        names = list(names) if names is not None else catalog_service.default_generators(signature)
        matches = catalog_service.match_basis(basis, names) if names else None
        terms: List[AnsatzTerm] = [
            AnsatzTerm(
                id=unknown,
                text=format_monomial(key),
                source_label=family.alignment.get(unknown),
            )
            for unknown, key in zip(family.unknowns, family.terms)
        ]
        elements = [
            BasisElement(
                coefficients={u: fraction_to_text(c) for u, c in zip(family.unknowns, vector) if c},
                expression=ExpressionRecord.from_expression(expression),
            )
            for vector, expression in zip(basis.vectors, basis.expressions)
        ]
        return ClassificationReport(
            signature=signature,
            constraints=sorted(family.constraints, key=lambda c: c.value),
            ansatz_size=family.size,
            terms=terms,
            system=SystemStats(
                unknowns=family.size,
                rows=len(system.rows),
                rank=basis.rank,
                nullity=family.size - basis.rank,
            ),
            dimension=basis.dimension,
            basis=elements,
            matches=matches,
            timing_seconds=round(time.perf_counter() - started, 3),
        )


classification_service = ClassificationService()
