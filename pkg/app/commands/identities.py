"""identities command"""

from typing import Optional

import click

from app.commands.deps import emit, handle_errors, output_options
from app.core.logging import get_logger
from app.services.identity_service import identity_service

logger = get_logger(__name__)


@click.command("identities")
@click.option(
    "--suite",
    default="all",
    show_default=True,
    help=f"all, an identity name or one of the groups: {', '.join(identity_service.groups)}",
)
@output_options
@handle_errors
def identities(suite: str, export_format: str, json_path: Optional[str]):
    """Check the displayed operator identities symbolically"""
    report = identity_service.run(suite)
    logger.info("Identity suite finished", suite=suite, failed=len(report.failed))
    emit(report, export_format, json_path)
    if report.failed:
        raise SystemExit(1)
