"""catalog command"""

from typing import Optional

import click

from app.commands.deps import emit, handle_errors, output_options
from app.schemas.catalog import CatalogEntryRecord, CatalogListing
from app.schemas.expression import ExpressionRecord
from app.services.catalog_service import catalog_service


@click.command("catalog")
@click.option("--name", default=None, help="Show a single operator")
@click.option("--family", default=None, help="Show one family of operators")
@output_options
@handle_errors
def catalog(name: Optional[str], family: Optional[str], export_format: str, json_path: Optional[str]):
    """List the named operators with their coordinate expansions"""
    entries = [catalog_service.entry(name)] if name else catalog_service.entries(family)
    listing = CatalogListing(entries=[
        CatalogEntryRecord(
            name=entry.name,
            family=entry.family,
            description=entry.description,
            signature=entry.signature,
            constraints=sorted(entry.constraints, key=lambda c: c.value),
            natural=entry.natural,
            expansion=ExpressionRecord.from_expression(catalog_service.expand(entry.name)),
        )
        for entry in entries
    ])
    if not entries:
        listing.message = f"no operators in family {family}"
    emit(listing, export_format, json_path)
