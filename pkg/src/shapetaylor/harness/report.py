"""Study reports and the artefacts written for them.

Every table is written with the CSV schema ``index, theta_or_x, theta_or_y, re, im``:
boundary nodes and far-field angles fill ``theta_or_x`` with the angle and leave
``theta_or_y`` empty, observation points fill both with their coordinates.
"""

from __future__ import annotations

import csv
import logging
import pathlib
from typing import TYPE_CHECKING, Literal

import msgspec
import numpy as np
from msgspec import field

from shapetaylor.config.app import RunConfig
from shapetaylor.lib.schemas import Struct

if TYPE_CHECKING:
    from collections.abc import Iterable

    import numpy.typing as npt

    from shapetaylor.recursion import RemainderStudy

__all__ = (
    "CheckResult",
    "OracleComparison",
    "RemainderSummary",
    "SampleTable",
    "StudyReport",
    "write_artifacts",
)

LOGGER = logging.getLogger(__name__)

type Quantity = Literal["boundary", "field", "far_field"]

CSV_HEADER = ("index", "theta_or_x", "theta_or_y", "re", "im")


class SampleTable(Struct):
    """Complex samples of one quantity at boundary nodes, points or angles."""

    name: str
    quantity: Quantity
    index: list[int]
    theta_or_x: list[float]
    theta_or_y: list[float | None]
    re: list[float]
    im: list[float]

    @classmethod
    def on_angles(
        cls,
        name: str,
        quantity: Quantity,
        theta: npt.ArrayLike,
        values: npt.ArrayLike,
    ) -> SampleTable:
        """Table sampled at angles; ``theta_or_y`` stays empty."""
        angles = np.asarray(theta, dtype=np.float64)
        data = np.asarray(values, dtype=np.complex128)
        return cls(
            name=name,
            quantity=quantity,
            index=list(range(angles.size)),
            theta_or_x=angles.tolist(),
            theta_or_y=[None] * angles.size,
            re=data.real.tolist(),
            im=data.imag.tolist(),
        )

    @classmethod
    def on_points(cls, name: str, points: npt.ArrayLike, values: npt.ArrayLike) -> SampleTable:
        """Table sampled at exterior points."""
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        data = np.asarray(values, dtype=np.complex128)
        return cls(
            name=name,
            quantity="field",
            index=list(range(len(pts))),
            theta_or_x=pts[:, 0].tolist(),
            theta_or_y=pts[:, 1].tolist(),
            re=data.real.tolist(),
            im=data.imag.tolist(),
        )

    def rows(self) -> Iterable[tuple[int, float, float | None, float, float]]:
        """CSV rows in column order."""
        return zip(self.index, self.theta_or_x, self.theta_or_y, self.re, self.im, strict=True)


class CheckResult(Struct):
    """Outcome of one verification: ``value`` is compared against ``tolerance``."""

    suite: str
    name: str
    value: float
    tolerance: float
    passed: bool
    detail: str = ""


class OracleComparison(Struct):
    label: str
    oracle: str
    max_error: float
    scale: float
    error_bar: float | None = None


class RemainderSummary(Struct):
    """Remainder errors of a Taylor study; slopes only where the fit is reliable."""

    ts: list[float]
    weights: list[float]
    errors: dict[int, list[float]]
    slopes: dict[int, float | None]
    residuals: dict[int, float | None]
    reference: str

    @classmethod
    def from_study(cls, study: RemainderStudy) -> RemainderSummary:
        """Summary of a remainder study with its fitted slopes."""
        return cls(
            ts=study.ts,
            weights=study.weights,
            errors=study.errors,
            slopes={order: study.slope(order) for order in study.orders},
            residuals={
                order: None if fit is None else fit.residual
                for order, fit in study.fits.items()
            },
            reference=study.reference,
        )


class StudyReport(Struct):
    """Everything one run computed, with the configuration that produced it."""

    command: str
    version: str
    config: RunConfig
    tables: list[SampleTable] = field(default_factory=list)
    provenance: dict[str, str] = field(default_factory=dict)
    norms: dict[str, float] = field(default_factory=dict)
    remainder: RemainderSummary | None = None
    oracle: list[OracleComparison] = field(default_factory=list)
    checks: list[CheckResult] = field(default_factory=list)
    symbolic: dict[str, str] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> list[CheckResult]:
        """Checks that did not pass."""
        return [check for check in self.checks if not check.passed]

    def encode(self, *, timings: bool = False) -> bytes:
        """Indented JSON; without ``timings`` the output is reproducible byte for byte."""
        report = self if timings else msgspec.structs.replace(self, timings={})
        return msgspec.json.format(msgspec.json.encode(report), indent=2)


def _csv_name(name: str) -> str:
    return "".join(c if c.isalnum() or c in "._-" else "_" for c in name) + ".csv"


def _write_csv(path: pathlib.Path, table: SampleTable) -> None:
    with path.open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_HEADER)
        for index, x, y, re, im in table.rows():
            writer.writerow((index, repr(x), "" if y is None else repr(y), repr(re), repr(im)))


def _write_remainder(path: pathlib.Path, remainder: RemainderSummary) -> None:
    lines = []
    for order, errors in remainder.errors.items():
        slope = remainder.slopes.get(order)
        lines.append(f"# order {order} slope {'n/a' if slope is None else f'{slope:.4f}'}")
        lines.extend(f"{t!r} {err!r}" for t, err in zip(remainder.ts, errors, strict=True))
        lines.append("")
    path.write_text("\n".join(lines))


def write_artifacts(
    report: StudyReport,
    directory: str | pathlib.Path,
    formats: Iterable[str] = ("json",),
) -> list[pathlib.Path]:
    """Write the report, its tables and plot data under ``directory``.

    ``report.json`` leaves out wall-clock timings, which go to ``timings.json``.
    """
    out = pathlib.Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written: list[pathlib.Path] = []
    formats = set(formats)
    if "json" in formats:
        (out / "report.json").write_bytes(report.encode())
        (out / "timings.json").write_bytes(msgspec.json.encode(report.timings))
        written += [out / "report.json", out / "timings.json"]
    if "csv" in formats:
        for table in report.tables:
            path = out / _csv_name(table.name)
            _write_csv(path, table)
            written.append(path)
    if report.remainder is not None:
        path = out / "remainder.dat"
        _write_remainder(path, report.remainder)
        written.append(path)
    LOGGER.info("Wrote %d artefacts to %s", len(written), out)
    return written
