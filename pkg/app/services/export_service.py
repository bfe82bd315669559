"""Export service for writing reports as JSON or text"""

from pathlib import Path
from typing import Callable, Dict, List, Type, TypeVar, Union

from pydantic import ValidationError

from app.core.exceptions import FixtureError
from app.core.logging import LoggerMixin
from app.models.notation import format_expression
from app.schemas.base import ReportBase
from app.schemas.catalog import CatalogListing
from app.schemas.classification import ClassificationReport
from app.schemas.fixture import RegressionReport
from app.schemas.homogeneity import HomogeneityReport
from app.schemas.verification import IdentitySuiteReport, NaturalityReport, VerificationReport

Report = TypeVar("Report", bound=ReportBase)


def _status(passed: bool) -> str:
    return "PASS" if passed else "FAIL"


def _classification_text(report: ClassificationReport) -> List[str]:
    constraints = ", ".join(c.value for c in report.constraints) or "none"
    lines = [
        f"signature    {report.signature.label}",
        f"constraints  {constraints}",
        f"ansatz       {report.ansatz_size} unknowns",
        f"system       {report.system.rows} rows, rank {report.system.rank}",
        f"dimension    {report.dimension}",
        "",
        "ansatz terms:",
    ]
    for term in report.terms:
        label = f"  [{term.source_label}]" if term.source_label else ""
        lines.append(f"  {term.id:>4}  {term.text}{label}")
    lines += ["", "basis:"]
    for n, element in enumerate(report.basis, 1):
        coefficients = " ".join(f"{u}={c}" for u, c in element.coefficients.items())
        lines.append(f"  ({n}) {coefficients}")
        lines.append(f"      {format_expression(element.expression.to_expression())}")
    if report.matches:
        matches = report.matches
        lines += [
            "",
            f"catalog match: rank {matches.named_rank} of {matches.basis_dimension}, "
            f"spans equal: {'yes' if matches.spans_equal else 'no'}",
        ]
        for name in matches.names:
            if name in matches.coordinates:
                lines.append(f"  {name}: [{', '.join(matches.coordinates[name])}]")
            else:
                lines.append(f"  {name}: outside the span, residual {matches.residuals.get(name, '')}")
    lines.append(f"time         {report.timing_seconds:.3f}s")
    return lines


def _naturality_text(report: NaturalityReport) -> List[str]:
    kind = "pure pairs" if report.pure else "generic inputs"
    lines = [
        f"{report.operator}: {_status(report.passed)} "
        f"({report.trials} trials, seed {report.seed}, dim {report.dim}, {kind})"
    ]
    if report.witness:
        w = report.witness
        component = ",".join(str(c) for c in w.component)
        lines.append(f"  trial {w.trial}, component ({component}): expected {w.expected}, got {w.actual}")
    return lines


def _verification_text(report: VerificationReport) -> List[str]:
    lines = [line for entry in report.reports for line in _naturality_text(entry)]
    lines.append(f"{len(report.reports) - len(report.failed)}/{len(report.reports)} operators pass")
    return lines


def _identities_text(report: IdentitySuiteReport) -> List[str]:
    width = max((len(r.name) for r in report.results), default=0)
    lines = []
    for result in report.results:
        lines.append(f"{_status(result.passed)}  {result.name:<{width}}  {result.description}")
        if result.residual:
            lines.append(f"      residual: {result.residual}")
    passed = len(report.results) - len(report.failed)
    lines.append(f"{passed}/{len(report.results)} identities hold")
    return lines


def _homogeneity_text(report: HomogeneityReport) -> List[str]:
    mode = "bilinear" if report.bilinear else "unrestricted"
    lines = [f"signature {report.signature.label}, order <= {report.max_order}, {mode}"]
    lines += [f"  solution   {s.label}" for s in report.solutions]
    lines += [f"  admissible {s.label}" for s in report.admissible]
    if report.certificate:
        lines.append(f"first order certificate: {', '.join(report.certificate.shapes)}")
    else:
        lines.append("no first order certificate")
    return lines


def _catalog_text(report: CatalogListing) -> List[str]:
    lines = []
    for entry in report.entries:
        natural = "" if entry.natural else "  (not natural in general)"
        constraints = ", ".join(c.value for c in entry.constraints)
        suffix = f"  [{constraints}]" if constraints else ""
        lines.append(f"{entry.name}  {entry.signature.label}  {entry.description}{suffix}{natural}")
        lines.append(f"    {format_expression(entry.expansion.to_expression())}")
    return lines


def _regression_text(report: RegressionReport) -> List[str]:
    lines = []
    for outcome in report.outcomes:
        lines.append(f"{_status(outcome.passed)}  {outcome.name}  dimension {outcome.dimension}")
        lines += [f"      {problem}" for problem in outcome.problems]
    lines.append(f"{len(report.outcomes) - len(report.failed)}/{len(report.outcomes)} fixtures pass")
    return lines


RENDERERS: Dict[Type[ReportBase], Callable] = {
    ClassificationReport: _classification_text,
    NaturalityReport: _naturality_text,
    VerificationReport: _verification_text,
    IdentitySuiteReport: _identities_text,
    HomogeneityReport: _homogeneity_text,
    CatalogListing: _catalog_text,
    RegressionReport: _regression_text,
}


class ExportService(LoggerMixin):
    """Service for exporting reports in various formats"""

    def render(self, report: ReportBase, export_format: str = "text") -> str:
        """
        Render a report

        Args:
            report: Any engine report
            export_format: "json" or "text"

        Returns:
            str: Rendered report
        """
        if export_format.lower() == "json":
            return report.model_dump_json(indent=2)
        renderer = RENDERERS.get(type(report))
        if renderer is None:
            return report.model_dump_json(indent=2)
        lines = renderer(report)
        if report.message:
            lines.append(report.message)
        return "\n".join(lines)

    def write_json(self, report: ReportBase, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(report.model_dump_json(indent=2), encoding="utf-8")
        self.log_operation("write_report", path=str(path), report=type(report).__name__)
        return path

    def load(self, path: Union[str, Path], schema: Type[Report]) -> Report:
        """Load a JSON report written by write_json"""
        path = Path(path)
        try:
            return schema.model_validate_json(path.read_text(encoding="utf-8"))
        except (OSError, ValidationError) as e:
            error = FixtureError("could not load report", {"path": str(path), "reason": str(e)})
            self.log_error(error, "load_report", schema=schema.__name__)
            raise error


export_service = ExportService()
