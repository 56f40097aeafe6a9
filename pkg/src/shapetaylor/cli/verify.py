from __future__ import annotations

from typing import TYPE_CHECKING

import click

from shapetaylor.config.app import VERIFY_SUITES

from ._common import echo_report, load_config, run_study, study_options

if TYPE_CHECKING:
    import pathlib

__all__ = ("verify",)


@click.command()
@study_options
@click.option(
    "--suite",
    type=click.Choice(["all", *VERIFY_SUITES]),
    help="Suite to run; overrides the config (default: all).",
)
def verify(
    config_path: pathlib.Path | None,
    output_dir: pathlib.Path | None,
    formats: tuple[str, ...],
    suite: str | None,
) -> None:
    """Run verification suites; the exit code is 0 only if every check passes."""
    config = load_config(
        "verify", config_path, output_dir=output_dir, formats=formats, suite=suite
    )
    echo_report(run_study(config))
