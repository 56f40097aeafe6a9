"""Study pipelines, oracles, convergence fits and report artefacts."""

from .exceptions import InsufficientDataError, OracleInconclusiveError
from .fitting import OrderFit, fit_order
from .oracle import OracleEstimate, RichardsonTable, fd_oracle, richardson
from .pipeline import build_scene
from .report import (
    CheckResult,
    OracleComparison,
    RemainderSummary,
    SampleTable,
    StudyReport,
    write_artifacts,
)
from .runner import execute, run
from .suites import SUITES

__all__ = (
    "SUITES",
    "CheckResult",
    "InsufficientDataError",
    "OracleComparison",
    "OracleEstimate",
    "OracleInconclusiveError",
    "OrderFit",
    "RemainderSummary",
    "RichardsonTable",
    "SampleTable",
    "StudyReport",
    "build_scene",
    "execute",
    "fd_oracle",
    "fit_order",
    "richardson",
    "run",
    "write_artifacts",
)
