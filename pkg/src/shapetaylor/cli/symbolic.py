from __future__ import annotations

from typing import TYPE_CHECKING

import click
import msgspec

from shapetaylor.config.app import RunConfig, SymbolicConfig

from ._common import output_option, run_study

if TYPE_CHECKING:
    import pathlib

__all__ = ("symbolic",)


@click.command()
@click.option(
    "--bc",
    type=click.Choice(["dirichlet", "neumann", "impedance", "transmission"]),
    default="dirichlet",
    show_default=True,
)
@click.option("--order", type=click.IntRange(1, 6), default=2, show_default=True)
@click.option("--dim", type=click.Choice(["2", "3"]), default="2", show_default=True)
@click.option("--degree", type=click.Choice(["0", "1"]), default="0", show_default=True)
@click.option(
    "--general-velocity",
    is_flag=True,
    default=False,
    help="Keep the terms of velocities without constant normal speed.",
)
@click.option("--json", "as_json", is_flag=True, default=False, help="Print JSON.")
@output_option
def symbolic(  # noqa: PLR0913
    bc: str,
    order: int,
    dim: str,
    degree: str,
    output_dir: pathlib.Path | None,
    *,
    general_velocity: bool,
    as_json: bool,
) -> None:
    """Generate the boundary datum of a shape-derivative problem as vector proxies."""
    settings = msgspec.convert(
        {
            "bc": bc,
            "order": order,
            "dim": int(dim),
            "degree": int(degree),
            "general_velocity": general_velocity,
        },
        type=SymbolicConfig,
    )
    config = RunConfig(command="symbolic", symbolic=settings)
    if output_dir is not None:
        config = msgspec.structs.replace(
            config, output=msgspec.structs.replace(config.output, directory=str(output_dir))
        )
    report = run_study(config, write=output_dir is not None)
    if as_json:
        click.echo(msgspec.json.encode(report.symbolic).decode())
    else:
        click.echo(report.symbolic["proxy"])
