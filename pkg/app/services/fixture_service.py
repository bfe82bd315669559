"""Regression fixtures: load, align and check against fresh classifications"""

import re
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Union

from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import FixtureError, NaturalOperatorError
from app.core.logging import LoggerMixin
from app.models.ansatz import AnsatzFamily
from app.models.matrix import RationalMatrix
from app.models.monomial import Monomial
from app.models.notation import parse
from app.models.system import ConstraintSystem
from app.models.tensor import FREE_LETTERS
from app.schemas.fixture import FixtureOutcome, RegressionFixture, RegressionReport
from app.schemas.signature import TensorSignature
from app.services.catalog_service import catalog_service
from app.services.classification_service import classification_service
from app.tasks.batch import run_batch

_RELATION_TERM = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*([ab]\d+)\s*")


def parse_relation(text: str) -> Dict[str, Fraction]:
    """'a1+a3-2b3' -> {a1: 1, a3: 1, b3: -2}"""
    relation: Dict[str, Fraction] = {}
    position = 0
    while position < len(text):
        match = _RELATION_TERM.match(text, position)
        if not match or match.end() == position:
            raise FixtureError("malformed relation", {"relation": text, "position": position})
        sign, coefficient, label = match.groups()
        if position and not sign:
            raise FixtureError("terms of a relation need a sign", {"relation": text})
        value = Fraction(coefficient or 1) * (-1 if sign == "-" else 1)
        relation[label] = relation.get(label, Fraction(0)) + value
        position = match.end()
    if not relation:
        raise FixtureError("empty relation", {"relation": text})
    return relation


def listing_monomial(text: str, signature: TensorSignature) -> Monomial:
    """One ansatz monomial in index notation with the standard output letters"""
    r = signature.out_contra
    upper = FREE_LETTERS[:r]
    lower = FREE_LETTERS[r:r + signature.out_cov]
    expression = parse(text, upper, lower)
    if len(expression.terms) != 1 or next(iter(expression.terms.values())) != 1:
        raise FixtureError("listing entries are single monomials", {"entry": text})
    return next(iter(expression.terms))


class FixtureService(LoggerMixin):
    """Reruns stored classification expectations"""

    def load(self, path: Union[str, Path]) -> RegressionFixture:
        path = Path(path)
        try:
            return RegressionFixture.model_validate_json(path.read_text(encoding="utf-8"))
        except (OSError, ValidationError) as e:
            error = FixtureError("could not load fixture", {"path": str(path), "reason": str(e)})
            self.log_error(error, "load_fixture")
            raise error

    def paths(self, directory: Optional[Union[str, Path]] = None) -> List[Path]:
        directory = Path(directory or settings.FIXTURES_DIR)
        if not directory.is_dir():
            raise FixtureError("fixture directory not found", {"path": str(directory)})
        return sorted(directory.glob("*.json"))

    def listing(self, fixture: RegressionFixture) -> Dict[str, Monomial]:
        return {label: listing_monomial(text, fixture.signature) for label, text in fixture.listing.items()}

    def relation_rows(
        self,
        fixture: RegressionFixture,
        family: AnsatzFamily,
        listing: Mapping[str, Monomial],
    ) -> List[Dict[int, Fraction]]:
        """Fixture relations as rows over the engine unknowns"""
        column = {key: n for n, key in enumerate(family.terms)}
        rows = []
        for text in fixture.relations:
            row: Dict[int, Fraction] = {}
            for label, value in parse_relation(text).items():
                if label not in listing:
                    raise FixtureError("relation uses an unlisted label", {"label": label, "fixture": fixture.name})
                key = listing[label]
                if key not in column:
                    raise FixtureError(
                        "listed monomial is not in the ansatz", {"label": label, "fixture": fixture.name}
                    )
                row[column[key]] = row.get(column[key], Fraction(0)) + value
            rows.append({c: v for c, v in row.items() if v})
        return rows

    def compare_relations(
        self,
        fixture: RegressionFixture,
        family: AnsatzFamily,
        system: ConstraintSystem,
    ) -> List[str]:
        listing = self.listing(fixture)
        missing = [key for key in family.terms if key not in set(listing.values())]
        if fixture.relations_mode == "equivalent" and missing:
            return [f"listing covers {len(family.terms) - len(missing)} of {family.size} unknowns"]
        rows = self.relation_rows(fixture, family, listing)
        expected = RationalMatrix.from_rows(rows, family.size).rank()
        found = system.rank()
        combined = RationalMatrix.from_rows(list(system.rows) + rows, family.size).rank()
        problems = []
        if combined != found:
            problems.append(f"relations are not implied by the system (rank {found} -> {combined})")
        if fixture.relations_mode == "equivalent" and expected != found:
            problems.append(f"relations have rank {expected}, the system has rank {found}")
        return problems

    def check(self, fixture: RegressionFixture) -> FixtureOutcome:
        problems: List[str] = []
        try:
            family, system, basis = classification_service.classify(fixture.signature, fixture.constraints)
            if basis.dimension != fixture.dimension:
                problems.append(f"dimension {basis.dimension}, expected {fixture.dimension}")
            if fixture.relations:
                problems += self.compare_relations(fixture, family, system)
            if fixture.catalog:
                matches = catalog_service.match_basis(basis, fixture.catalog)
                if not matches.spans_equal:
                    problems.append(
                        f"catalog names span rank {matches.named_rank} of {basis.dimension}"
                        + (f", outside: {', '.join(matches.residuals)}" if matches.residuals else "")
                    )
                elif len(fixture.catalog) == basis.dimension and matches.inverse is None:
                    problems.append("change of basis is not invertible")
            for check in fixture.family_ranks:
                rank = catalog_service.family_rank(check.names, check.constraints, check.alternate_output)
                if rank != check.rank:
                    problems.append(f"family rank {rank}, expected {check.rank} for {', '.join(check.names)}")
            dimension = basis.dimension
        except NaturalOperatorError as e:
            self.log_error(e, "check_fixture", fixture=fixture.name)
            problems.append(f"{type(e).__name__}: {e.message}")
            dimension = -1
        passed = not problems
        self.log_operation("check_fixture", fixture=fixture.name, passed=passed, problems=len(problems))
        return FixtureOutcome(name=fixture.name, passed=passed, dimension=dimension, problems=problems)

    def check_path(self, path: Union[str, Path]) -> FixtureOutcome:
        return self.check(self.load(path))

    def run(self, paths: Sequence[Path], workers: Optional[int] = None) -> RegressionReport:
        outcomes = run_batch(check_fixture_file, [str(p) for p in paths], workers, "fixtures")
        report = RegressionReport(outcomes=outcomes)
        report.success = not report.failed
        if report.failed:
            report.message = f"{len(report.failed)} of {len(outcomes)} fixtures failed"
        return report


fixture_service = FixtureService()


def check_fixture_file(path: str) -> FixtureOutcome:
    """Picklable entry point for worker processes"""
    return fixture_service.check_path(path)
