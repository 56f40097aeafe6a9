from __future__ import annotations

from typing import TYPE_CHECKING

import click

from ._common import echo_report, load_config, run_study, study_options

if TYPE_CHECKING:
    import pathlib

__all__ = ("derive", "solve", "taylor")

order_option = click.option(
    "--order", type=click.IntRange(1, 2), help="Expansion order; overrides the config."
)


@click.command()
@study_options
def solve(
    config_path: pathlib.Path | None,
    output_dir: pathlib.Path | None,
    formats: tuple[str, ...],
) -> None:
    """Solve the base scattering problem of a configuration."""
    config = load_config("solve", config_path, output_dir=output_dir, formats=formats)
    echo_report(run_study(config))


@click.command()
@study_options
@order_option
def derive(
    config_path: pathlib.Path | None,
    output_dir: pathlib.Path | None,
    formats: tuple[str, ...],
    order: int | None,
) -> None:
    """Solve every shape-derivative problem up to the requested order."""
    config = load_config(
        "derive", config_path, output_dir=output_dir, formats=formats, order=order
    )
    echo_report(run_study(config))


@click.command()
@study_options
@order_option
def taylor(
    config_path: pathlib.Path | None,
    output_dir: pathlib.Path | None,
    formats: tuple[str, ...],
    order: int | None,
) -> None:
    """Compare the shape Taylor expansion with direct solves and fit remainder slopes."""
    config = load_config(
        "taylor", config_path, output_dir=output_dir, formats=formats, order=order
    )
    echo_report(run_study(config))
