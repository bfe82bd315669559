"""regress command"""

from typing import Optional

import click

from app.commands.deps import emit, handle_errors, output_options
from app.core.logging import get_logger
from app.services.fixture_service import fixture_service

logger = get_logger(__name__)


@click.command("regress")
@click.option("--fixtures", "directory", type=click.Path(file_okay=False), default=None, help="Fixture directory")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Worker processes")
@output_options
@handle_errors
def regress(directory: Optional[str], workers: Optional[int], export_format: str, json_path: Optional[str]):
    """Rerun every stored classification fixture"""
    paths = fixture_service.paths(directory)
    report = fixture_service.run(paths, workers)
    logger.info("Regression finished", fixtures=len(paths), failed=len(report.failed))
    emit(report, export_format, json_path)
    if report.failed:
        raise SystemExit(1)
