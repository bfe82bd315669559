"""classify command"""

from typing import Optional, Tuple

import click

from app.commands.deps import (
    SYMMETRY_CHOICES,
    constraints_from,
    emit,
    handle_errors,
    output_options,
    signature_from,
    signature_options,
)
from app.core.exceptions import SignatureError
from app.core.logging import get_logger
from app.services.classification_service import classification_service
from app.services.fixture_service import fixture_service

logger = get_logger(__name__)


@click.command("classify")
@signature_options
@click.option("--sym-psi", type=click.Choice(sorted(SYMMETRY_CHOICES)), default=None, help="Symmetry of psi")
@click.option("--alt-phi", is_flag=True, help="phi is a tangent-valued form")
@click.option("--alt-output", is_flag=True, help="Alternate the covariant output slots")
@click.option("--names", multiple=True, help="Catalog operators to match against the basis")
@click.option(
    "--fixture", "fixture_path", type=click.Path(exists=True, dir_okay=False), default=None,
    help="Label the ansatz terms with the listing of this fixture",
)
@click.option("--sign", type=click.Choice(["1", "-1"]), default="1", help="Sign convention of the connection")
@output_options
@handle_errors
def classify(
    phi: int,
    psi: str,
    sym_psi: Optional[str],
    alt_phi: bool,
    alt_output: bool,
    names: Tuple[str, ...],
    fixture_path: Optional[str],
    sign: str,
    export_format: str,
    json_path: Optional[str],
):
    """Classify natural bilinear first-order operators (1,P) x (R,S) -> (R,S+P)"""
    signature = signature_from(phi, psi)
    constraints = constraints_from(signature, sym_psi, alt_phi, alt_output)
    listing = None
    if fixture_path:
        fixture = fixture_service.load(fixture_path)
        if fixture.signature != signature:
            raise SignatureError(
                "fixture belongs to another signature",
                {"fixture": fixture.signature.label, "requested": signature.label},
            )
        listing = fixture_service.listing(fixture)

    report = classification_service.report(
        signature,
        constraints,
        names=list(names) if names else None,
        sign=int(sign),
        listing=listing,
    )
    logger.info("Classification finished", signature=signature.label, dimension=report.dimension)
    emit(report, export_format, json_path)
