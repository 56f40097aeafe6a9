from __future__ import annotations

import logging
import time
from typing import TYPE_CHECKING

from shapetaylor import __version__
from shapetaylor.harness.pipeline import (
    derive_study,
    solve_study,
    symbolic_study,
    taylor_study,
)
from shapetaylor.harness.report import StudyReport, write_artifacts
from shapetaylor.harness.suites import verify_study

if TYPE_CHECKING:
    from collections.abc import Callable

    from shapetaylor.config.app import RunConfig

__all__ = ("PIPELINES", "execute", "run")

LOGGER = logging.getLogger(__name__)

PIPELINES: dict[str, Callable[[RunConfig, StudyReport], None]] = {
    "solve": solve_study,
    "derive": derive_study,
    "taylor": taylor_study,
    "verify": verify_study,
    "symbolic": symbolic_study,
}


def execute(config: RunConfig) -> StudyReport:
    """Run the pipeline of ``config.command`` without writing anything."""
    report = StudyReport(command=config.command, version=__version__, config=config)
    PIPELINES[config.command](config, report)
    return report


def run(config: RunConfig, *, write: bool = True) -> StudyReport:
    """Validate ``config``, run its pipeline and write the artefacts.

    Raises
    ------
    ConfigError
        If the configuration is invalid; raised before any solve.
    """
    config = config.validate()
    LOGGER.info("Running %s (seed %d)", config.command, config.seed)
    started = time.perf_counter()
    report = execute(config)
    report.timings["total"] = time.perf_counter() - started
    if write:
        write_artifacts(report, config.output.directory, config.output.formats)
    status = "passed" if report.passed else f"{len(report.failures())} checks failed"
    LOGGER.info("%s finished in %.2fs: %s", config.command, report.timings["total"], status)
    return report
