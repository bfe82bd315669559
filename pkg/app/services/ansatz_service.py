"""Ansatz generation and symmetry quotients"""

from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping, Optional

from app.core.exceptions import InconsistencyError
from app.core.logging import LoggerMixin
from app.models.ansatz import AnsatzFamily, Shape, matching_terms
from app.models.monomial import Monomial
from app.models.relations import RelationQuotient
from app.models.tensor import Head
from app.schemas.signature import INPUT_CONSTRAINTS, SymmetryConstraint, TensorSignature, check_constraints
from app.services.homogeneity_service import homogeneity_service


@lru_cache(maxsize=None)
def _generate(signature: TensorSignature) -> AnsatzFamily:
    expected = factorial(signature.slot_count)
    sides = {}
    for shape in Shape:
        terms = sorted(set(matching_terms(signature, shape)))
        if len(terms) != expected:
            raise InconsistencyError(
                "slot matchings did not give distinct monomials",
                {"signature": signature.label, "shape": shape.value, "expected": expected, "found": len(terms)},
            )
        sides[shape] = tuple(terms)
    a_terms, b_terms = sides[Shape.PHI_DPSI], sides[Shape.PSI_DPHI]
    return AnsatzFamily(
        signature=signature,
        a_terms=a_terms,
        b_terms=b_terms,
        a_ids=tuple(f"a{n + 1}" for n in range(len(a_terms))),
        b_ids=tuple(f"b{n + 1}" for n in range(len(b_terms))),
    )


class AnsatzService(LoggerMixin):
    """Builds the general bilinear first-order ansatz and its constrained quotients"""

    def generate(self, signature: TensorSignature) -> AnsatzFamily:
        homogeneity_service.certify_first_order(signature)
        family = _generate(signature)
        self.log_operation(
            "generate_ansatz",
            signature=signature.label,
            a_terms=len(family.a_terms),
            b_terms=len(family.b_terms),
        )
        return family

    def quotient(self, family: AnsatzFamily, constraints: Iterable[SymmetryConstraint]) -> RelationQuotient:
        """Relation quotient over every monomial of the unconstrained family"""
        found = check_constraints(family.signature, constraints)
        return _quotient(family.signature, found & INPUT_CONSTRAINTS)

    def apply_symmetry(
        self,
        family: AnsatzFamily,
        constraints: Iterable[SymmetryConstraint],
    ) -> AnsatzFamily:
        """Keep one representative per class of monomials equal on constrained inputs

        The output alternation is recorded on the family and applied to solutions.
        """
        found = check_constraints(family.signature, constraints) | family.constraints
        base = _generate(family.signature)
        quotient = _quotient(family.signature, found & INPUT_CONSTRAINTS)
        keep = set(quotient.representatives)
        ids = dict(zip(base.terms, base.unknowns))
        outside = keep - set(ids)
        if outside:
            raise InconsistencyError(
                "symmetry relations left the ansatz",
                {"signature": family.signature.label, "count": len(outside)},
            )
        a_terms = tuple(t for t in base.a_terms if t in keep)
        b_terms = tuple(t for t in base.b_terms if t in keep)
        self.log_operation(
            "apply_symmetry",
            signature=family.signature.label,
            constraints=sorted(c.value for c in found),
            representatives=len(keep),
        )
        return AnsatzFamily(
            signature=family.signature,
            a_terms=a_terms,
            b_terms=b_terms,
            a_ids=tuple(ids[t] for t in a_terms),
            b_ids=tuple(ids[t] for t in b_terms),
            constraints=found,
            alignment=family.alignment,
        )

    def aligned(self, family: AnsatzFamily, listing: Mapping[str, Monomial]) -> AnsatzFamily:
        """Attach source labels given as label -> monomial"""
        ids = dict(zip(family.terms, family.unknowns))
        alignment = {ids[key]: label for label, key in listing.items() if key in ids}
        return AnsatzFamily(
            signature=family.signature,
            a_terms=family.a_terms,
            b_terms=family.b_terms,
            a_ids=family.a_ids,
            b_ids=family.b_ids,
            constraints=family.constraints,
            alignment=alignment,
        )

    def shape_of(self, key: Monomial) -> Optional[Shape]:
        if key.count(Head.DPSI) == 1 and key.count(Head.PHI) == 1:
            return Shape.PHI_DPSI
        if key.count(Head.DPHI) == 1 and key.count(Head.PSI) == 1:
            return Shape.PSI_DPHI
        return None


@lru_cache(maxsize=None)
def _quotient(signature: TensorSignature, constraints: frozenset) -> RelationQuotient:
    return RelationQuotient.build(_generate(signature).terms, signature, constraints)


ansatz_service = AnsatzService()
