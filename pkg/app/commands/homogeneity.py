"""homogeneity command"""

from typing import Optional

import click

from app.commands.deps import emit, handle_errors, output_options, signature_from, signature_options
from app.core.config import settings
from app.core.logging import get_logger
from app.services.homogeneity_service import homogeneity_service

logger = get_logger(__name__)


@click.command("homogeneity")
@signature_options
@click.option("--max-order", type=int, default=None, help="Highest derivative order considered")
@click.option("--bilinear", is_flag=True, help="Only monomials linear in both fields")
@output_options
@handle_errors
def homogeneity(
    phi: int,
    psi: str,
    max_order: Optional[int],
    bilinear: bool,
    export_format: str,
    json_path: Optional[str],
):
    """Solve the degree equation and certify first order"""
    signature = signature_from(phi, psi)
    max_order = settings.MAX_ORDER if max_order is None else max_order
    report = homogeneity_service.report(signature, max_order, bilinear)
    if report.certificate is None:
        report.message = "the admissible solutions are not the two first-order shapes"
    logger.info(
        "Degree equation solved",
        signature=signature.label,
        solutions=len(report.solutions),
        certified=report.certificate is not None,
    )
    emit(report, export_format, json_path)
    if report.certificate is None:
        raise SystemExit(1)
