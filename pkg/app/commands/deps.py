"""Shared option parsing and output for the commands"""

from functools import wraps
from typing import Callable, FrozenSet, Optional, Tuple

import click

from app.core.exceptions import NaturalOperatorError, create_cli_exception
from app.core.logging import get_logger
from app.schemas.base import ReportBase
from app.schemas.signature import SymmetryConstraint, TensorSignature, check_constraints
from app.services.export_service import export_service

logger = get_logger(__name__)

SYMMETRY_CHOICES = {
    "sym": SymmetryConstraint.PSI_SYMMETRIC,
    "antisym": SymmetryConstraint.PSI_ANTISYMMETRIC,
    "closed": SymmetryConstraint.PSI_CLOSED_FORM,
}


def parse_valence(text: str) -> Tuple[int, int]:
    """'R,S' -> (R, S)"""
    parts = text.split(",")
    if len(parts) != 2 or not all(part.strip().isdigit() for part in parts):
        raise click.BadParameter("expected two non-negative integers as R,S", param_hint="--psi")
    return int(parts[0]), int(parts[1])


def signature_from(phi: int, psi: str) -> TensorSignature:
    if phi < 0:
        raise click.BadParameter("must be non-negative", param_hint="--phi")
    r, s = parse_valence(psi)
    return TensorSignature(phi_p=phi, psi_r=r, psi_s=s)


def constraints_from(
    signature: TensorSignature,
    sym_psi: Optional[str],
    alt_phi: bool,
    alt_output: bool,
) -> FrozenSet[SymmetryConstraint]:
    chosen = set()
    if sym_psi:
        chosen.add(SYMMETRY_CHOICES[sym_psi])
    if alt_phi:
        chosen.add(SymmetryConstraint.PHI_ANTISYMMETRIC)
    if alt_output:
        chosen.add(SymmetryConstraint.OUTPUT_ALTERNATING)
    return check_constraints(signature, chosen)


def signature_options(command: Callable) -> Callable:
    command = click.option("--psi", "psi", required=True, help="Valence R,S of psi")(command)
    command = click.option("--phi", "phi", type=int, required=True, help="Lower valence P of phi = (1,P)")(command)
    return command


def output_options(command: Callable) -> Callable:
    command = click.option(
        "--format", "export_format", type=click.Choice(["text", "json"]), default="text",
        help="Format printed to stdout",
    )(command)
    command = click.option(
        "--json", "json_path", type=click.Path(dir_okay=False), default=None,
        help="Also write the JSON report to this file",
    )(command)
    return command


def emit(report: ReportBase, export_format: str, json_path: Optional[str]) -> None:
    click.echo(export_service.render(report, export_format))
    if json_path:
        export_service.write_json(report, json_path)


def handle_errors(command: Callable) -> Callable:
    """Map domain errors to click exceptions: usage errors exit 2, the rest exit 1"""

    @wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except NaturalOperatorError as e:
            logger.error("Command failed", error=e.message, error_type=type(e).__name__, **_loggable(e))
            raise create_cli_exception(e)

    return wrapper


def _loggable(error: NaturalOperatorError) -> dict:
    return {"details": {k: str(v) for k, v in error.details.items()}} if error.details else {}
