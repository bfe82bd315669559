"""Command group"""

import click

from app.commands.catalog import catalog
from app.commands.classify import classify
from app.commands.homogeneity import homogeneity
from app.commands.identities import identities
from app.commands.regress import regress
from app.commands.verify import verify
from app.core.config import settings
from app.core.logging import bind_run_context, configure_logging


@click.group()
@click.version_option(settings.APP_VERSION, prog_name=settings.APP_NAME)
@click.option("--debug", is_flag=True, help="Readable logs at INFO level on stderr")
@click.pass_context
def cli(ctx: click.Context, debug: bool):
    """Classification of natural bilinear first-order operators on tensor fields"""
    if debug:
        settings.DEBUG = True
    configure_logging("INFO" if debug else None)
    bind_run_context(command=ctx.invoked_subcommand, engine_version=settings.APP_VERSION)


cli.add_command(classify)
cli.add_command(verify)
cli.add_command(identities)
cli.add_command(homogeneity)
cli.add_command(catalog)
cli.add_command(regress)
