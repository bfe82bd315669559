"""verify command"""

from typing import List, Optional, Tuple

import click

from app.commands.deps import emit, handle_errors, output_options
from app.core.config import settings
from app.core.exceptions import CatalogError
from app.core.logging import get_logger
from app.schemas.classification import ClassificationReport
from app.schemas.verification import NaturalityReport, VerificationReport
from app.services.catalog_service import catalog_service
from app.services.export_service import export_service
from app.services.jet_service import jet_service
from app.tasks.batch import run_batch
from app.tasks.verification import OperatorCheck, check_catalog_operator

logger = get_logger(__name__)


def _basis_reports(path: str, trials: int, seed: int, dim: int) -> List[NaturalityReport]:
    report = export_service.load(path, ClassificationReport)
    expressions = {
        f"basis_{n}": element.expression.to_expression()
        for n, element in enumerate(report.basis, 1)
    }
    return jet_service.check_basis(expressions, report.signature, report.constraints, trials, seed, dim)


@click.command("verify")
@click.option("--op", "operators", multiple=True, help="Catalog operator to check (repeatable)")
@click.option(
    "--basis-from", type=click.Path(exists=True, dir_okay=False), default=None,
    help="Check every basis element of a classify JSON report",
)
@click.option("--pure", is_flag=True, help="Check the Yano-Ako operator on pure pairs")
@click.option("--trials", type=click.IntRange(min=1), default=None, help="Random trials per operator")
@click.option("--seed", type=int, default=None, help="Seed of the trial generator")
@click.option("--dim", type=click.IntRange(min=2), default=None, help="Manifold dimension")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Worker processes for --op checks")
@output_options
@handle_errors
def verify(
    operators: Tuple[str, ...],
    basis_from: Optional[str],
    pure: bool,
    trials: Optional[int],
    seed: Optional[int],
    dim: Optional[int],
    workers: Optional[int],
    export_format: str,
    json_path: Optional[str],
):
    """Numeric naturality checks on random fields and diffeomorphism jets"""
    if not operators and not basis_from and not pure:
        raise click.UsageError("give --op NAME, --basis-from PATH or --pure")
    seed = settings.DEFAULT_SEED if seed is None else seed
    dim = dim or settings.JET_DIMENSION

    reports: List[NaturalityReport] = []
    if operators:
        count = settings.NATURALITY_TRIALS if trials is None else trials
        unknown = [name for name in operators if name not in catalog_service.names]
        if unknown:
            raise CatalogError("unknown operator", {"name": ", ".join(unknown)})
        requests = [OperatorCheck(name, count, seed, dim) for name in operators]
        reports += run_batch(check_catalog_operator, requests, workers, "operators")
    if basis_from:
        count = settings.NATURALITY_TRIALS if trials is None else trials
        reports += _basis_reports(basis_from, count, seed, dim)
    if pure:
        reports.append(jet_service.check_pure_case(trials, seed, dim))

    report = VerificationReport(reports=reports)
    report.success = not report.failed
    if report.failed:
        report.message = f"{len(report.failed)} of {len(reports)} operators failed"
    logger.info("Verification finished", operators=len(reports), failed=len(report.failed))
    emit(report, export_format, json_path)
    if report.failed:
        raise SystemExit(1)
