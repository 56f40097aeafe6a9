"""Cli."""

from __future__ import annotations

import click

from shapetaylor import __version__
from shapetaylor.config.logging import configure_logging

from .study import derive, solve, taylor
from .symbolic import symbolic
from .verify import verify

__all__ = ("shapetaylor_group",)


@click.group(name="shapetaylor")
@click.version_option(__version__)
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    help="Overrides SHAPETAYL_LOG_LEVEL.",
)
def shapetaylor_group(log_level: str | None) -> None:
    """Shape derivatives and shape Taylor expansions of 2D acoustic scattering."""
    configure_logging(log_level.upper() if log_level else None)


shapetaylor_group.add_command(solve)
shapetaylor_group.add_command(derive)
shapetaylor_group.add_command(taylor)
shapetaylor_group.add_command(verify)
shapetaylor_group.add_command(symbolic)
