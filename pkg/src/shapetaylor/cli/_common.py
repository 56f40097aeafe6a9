from __future__ import annotations

import pathlib
from typing import TYPE_CHECKING, Any

import click
import msgspec

from shapetaylor.config.app import RunConfig
from shapetaylor.harness import run
from shapetaylor.lib.exceptions import ShapeTaylorError

if TYPE_CHECKING:
    from collections.abc import Callable

    from shapetaylor.config.app import Command
    from shapetaylor.harness import StudyReport

__all__ = ("echo_report", "load_config", "run_study", "study_options")

config_option = click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False, path_type=pathlib.Path),
    help="TOML run configuration; defaults apply to every missing key.",
)
output_option = click.option(
    "--output-dir",
    type=click.Path(file_okay=False, path_type=pathlib.Path),
    help="Directory for the report and its artefacts.",
)
format_option = click.option(
    "--format",
    "formats",
    type=click.Choice(["json", "csv"]),
    multiple=True,
    help="Artefact format; repeat for several.",
)


def study_options[F: Callable[..., Any]](func: F) -> F:
    """Options shared by every command that reads a run configuration."""
    return config_option(output_option(format_option(func)))


def load_config(
    command: Command,
    config_path: pathlib.Path | None,
    *,
    output_dir: pathlib.Path | None = None,
    formats: tuple[str, ...] = (),
    **changes: Any,
) -> RunConfig:
    """Read the configuration and apply the command-line overrides."""
    try:
        config = RunConfig() if config_path is None else RunConfig.from_toml(config_path)
    except ShapeTaylorError as exc:
        msg = f"{type(exc).__name__}: {exc.detail}"
        raise click.ClickException(msg) from exc
    output = config.output
    if output_dir is not None:
        output = msgspec.structs.replace(output, directory=str(output_dir))
    if formats:
        output = msgspec.structs.replace(output, formats=formats)
    changes = {key: value for key, value in changes.items() if value is not None}
    return msgspec.structs.replace(config, command=command, output=output, **changes)


def run_study(config: RunConfig, *, write: bool = True) -> StudyReport:
    """Run ``config``; pipeline errors become one-line click errors."""
    try:
        return run(config, write=write)
    except ShapeTaylorError as exc:
        msg = f"{type(exc).__name__}: {exc.detail}"
        raise click.ClickException(msg) from exc


def echo_report(report: StudyReport) -> None:
    """Print the checks of ``report`` and exit non-zero when one failed."""
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        line = f"{status} {check.suite}: {check.name} = {check.value:.3e} (tol {check.tolerance:.1e})"
        click.echo(f"{line} {check.detail}".rstrip())
    for label, norm in report.norms.items():
        click.echo(f"norm {label} = {norm:.6e}")
    if report.remainder is not None:
        for order, slope in report.remainder.slopes.items():
            text = "n/a" if slope is None else f"{slope:.3f}"
            click.echo(f"order {order} remainder slope {text}")
    if not report.passed:
        click.get_current_context().exit(1)
