"""Study pipelines: each fills a :class:`StudyReport` for one configuration."""

from __future__ import annotations

import contextlib
import logging
import math
import time
from typing import TYPE_CHECKING

import numpy as np

from shapetaylor.config.app import APP_CONFIG
from shapetaylor.harness.report import (
    CheckResult,
    RemainderSummary,
    SampleTable,
    StudyReport,
)
from shapetaylor.recursion import (
    Scene,
    remainder_study,
    shape_derivative_solve,
    solve_scene,
)
from shapetaylor.symbolic import (
    VSum,
    generate,
    reduce_first_order_2d,
    render_canonical,
    render_form,
    to_vector_proxy,
)

if TYPE_CHECKING:
    from collections.abc import Iterator

    import numpy.typing as npt

    from shapetaylor.config.app import RunConfig
    from shapetaylor.recursion import TaylorRecord
    from shapetaylor.solvers import ScatterSolution

__all__ = (
    "FAR_FIELD_ANGLES",
    "RESIDUAL_TOLERANCE",
    "SLOPE_BOUNDS",
    "build_scene",
    "cauchy_norm",
    "derivative_label",
    "derive_record",
    "derive_study",
    "far_field_angles",
    "slope_checks",
    "solve_study",
    "symbolic_study",
    "taylor_study",
    "timed",
)

LOGGER = logging.getLogger(__name__)

FAR_FIELD_ANGLES = 64
RESIDUAL_TOLERANCE = 1e-8
SLOPE_BOUNDS: dict[int, tuple[float, float]] = {
    0: (0.9, 1.3),
    1: (1.9, 2.3),
    2: (2.9, math.inf),
}


@contextlib.contextmanager
def timed(report: StudyReport, stage: str) -> Iterator[None]:
    """Record the wall time of the block under ``report.timings[stage]``."""
    started = time.perf_counter()
    try:
        yield
    finally:
        report.timings[stage] = time.perf_counter() - started


def build_scene(config: RunConfig) -> Scene:
    """Scene of the base scattering problem described by ``config``."""
    scene = config.scene
    return Scene(
        curve=scene.curve.to_curve(),
        bc=scene.bc,
        k=scene.k,
        incident=config.incident_field(),
        medium=scene.medium,
        n_nodes=config.solver.n_nodes,
        n_modes=config.solver.n_modes,
        backend=config.solver.backend,
    )


def far_field_angles() -> npt.NDArray[np.float64]:
    return 2.0 * np.pi * np.arange(FAR_FIELD_ANGLES) / FAR_FIELD_ANGLES


def derivative_label(index: tuple[int, ...]) -> str:
    """``(0, 1)`` -> ``"[1,2]"``, with velocities numbered from one."""
    return "[" + ",".join(str(i + 1) for i in index) + "]"


def _solution_tables(
    name: str, solution: ScatterSolution, points: npt.NDArray[np.float64]
) -> list[SampleTable]:
    theta = solution.grid.theta
    angles = far_field_angles()
    tables = [
        SampleTable.on_angles(f"{name}.trace", "boundary", theta, solution.trace().values),
        SampleTable.on_angles(
            f"{name}.normal_trace", "boundary", theta, solution.normal_trace().values
        ),
        SampleTable.on_angles(
            f"{name}.far_field", "far_field", angles, solution.far_field(angles)
        ),
    ]
    if len(points):
        tables.append(SampleTable.on_points(f"{name}.field", points, solution.evaluate(points)))
    return tables


def _points(config: RunConfig) -> npt.NDArray[np.float64]:
    return np.asarray(config.points, dtype=np.float64).reshape(-1, 2)


def cauchy_norm(solution: ScatterSolution) -> float:
    """Largest absolute value of the trace and normal trace of solution."""
    return max(solution.trace().max_abs(), solution.normal_trace().max_abs())


def solve_study(config: RunConfig, report: StudyReport) -> None:
    """Solve the base problem and tabulate its traces, far field and field values."""
    with timed(report, "solve"):
        solution = solve_scene(build_scene(config))
    report.tables += _solution_tables("base", solution, _points(config))
    residual = solution.boundary_residual()
    report.checks.append(
        CheckResult(
            suite="solve",
            name="boundary residual",
            value=residual,
            tolerance=RESIDUAL_TOLERANCE,
            passed=residual <= RESIDUAL_TOLERANCE,
        )
    )


def derive_record(config: RunConfig) -> TaylorRecord:
    """Solve every derivative problem up to ``config.order``."""
    return shape_derivative_solve(
        build_scene(config),
        config.velocity_fields(),
        config.order,
        mixed_normal=config.solver.mixed_normal,
    )


def _record_tables(
    record: TaylorRecord, report: StudyReport, points: npt.NDArray[np.float64]
) -> None:
    report.tables += _solution_tables("base", record.base, points)
    for index in record.indices:
        label = derivative_label(index)
        problem = record.problem(*index)
        report.provenance[label] = problem.provenance.formula
        for i, part in enumerate(problem.parts()):
            report.tables.append(
                SampleTable.on_angles(
                    f"data{label}.{i}", "boundary", record.grid.theta, part.values
                )
            )
        derivative = record.derivative(*index)
        report.tables += _solution_tables(f"derivative{label}", derivative, points)
        report.norms[label] = cauchy_norm(derivative)


def derive_study(config: RunConfig, report: StudyReport) -> None:
    """Shape derivatives with their data provenance, sample tables and norms."""
    with timed(report, "derive"):
        record = derive_record(config)
    LOGGER.info(
        "Solved %d derivative problems on the %s backend",
        len(record.indices),
        record.base.backend,
    )
    _record_tables(record, report, _points(config))


def slope_checks(
    summary: RemainderSummary, suite: str, label: str = ""
) -> list[CheckResult]:
    """Compare fitted remainder slopes with ``order + 1``.

    Remainders on the rounding floor leave no slope to fit and pass; a slope that
    was fitted but is unreliable fails. ``label`` prefixes the check names.
    """
    prefix = f"{label} " if label else ""
    checks = []
    for order in summary.errors:
        low, high = SLOPE_BOUNDS[order]
        name = f"{prefix}order {order} remainder slope"
        slope = summary.slopes.get(order)
        residual = summary.residuals.get(order)
        if residual is None:
            check = CheckResult(
                suite=suite,
                name=name,
                value=0.0,
                tolerance=low,
                passed=True,
                detail="remainders at the rounding floor",
            )
        elif slope is None:
            check = CheckResult(
                suite=suite,
                name=name,
                value=residual,
                tolerance=low,
                passed=False,
                detail=f"log-log fit residual {residual:.3f} too large",
            )
        else:
            check = CheckResult(
                suite=suite,
                name=name,
                value=slope,
                tolerance=low,
                passed=low <= slope <= high,
                detail=f"expected [{low}, {high}]",
            )
        checks.append(check)
    return checks


def taylor_study(config: RunConfig, report: StudyReport, suite: str = "taylor") -> None:
    """Remainder study of the shape Taylor expansion, with slope checks."""
    points = _points(config)
    with timed(report, "derive"):
        record = derive_record(config)
    with timed(report, "remainder"):
        study = remainder_study(record, config.t_values, points, threads=APP_CONFIG.threads)
    if suite == "taylor":
        _record_tables(record, report, points)
    report.remainder = RemainderSummary.from_study(study)
    report.checks += slope_checks(report.remainder, suite)


def symbolic_study(config: RunConfig, report: StudyReport) -> None:
    """Generate the symbolic boundary datum and its vector proxy."""
    settings = config.symbolic
    with timed(report, "symbolic"):
        expr = generate(
            settings.bc,
            settings.order,
            settings.dim,
            settings.degree,
            general_velocity=settings.general_velocity,
        )
        proxy = to_vector_proxy(expr, settings.dim, settings.degree)
    report.symbolic = {"forms": render_form(expr), "proxy": render_canonical(proxy)}
    reducible = (settings.dim, settings.degree, settings.order) == (2, 0, 1)
    if reducible and isinstance(proxy, VSum):
        report.symbolic["boundary_formula"] = reduce_first_order_2d(proxy)
