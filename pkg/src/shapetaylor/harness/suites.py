"""Verification suites run by ``shapetaylor verify``.

Each suite appends :class:`~shapetaylor.harness.report.CheckResult` rows to the
report; the command passes when every row does.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, cast

import msgspec
import numpy as np

from shapetaylor import __version__
from shapetaylor.boundary_calculus import build_jet
from shapetaylor.config.app import VERIFY_SUITES
from shapetaylor.geometry import (
    NormalSpeedField,
    StarCurve,
    as_complex,
    build_grid,
    circle,
    normal_shape_derivative,
    offset_curve,
)
from shapetaylor.harness.exceptions import OracleInconclusiveError
from shapetaylor.harness.oracle import fd_oracle
from shapetaylor.harness.pipeline import (
    RESIDUAL_TOLERANCE,
    build_scene,
    cauchy_norm,
    derivative_label,
    derive_record,
    derive_study,
    far_field_angles,
    slope_checks,
    taylor_study,
    timed,
)
from shapetaylor.harness.report import (
    CheckResult,
    OracleComparison,
    RemainderSummary,
    StudyReport,
)
from shapetaylor.lib.exceptions import UnsupportedError
from shapetaylor.recursion import (
    Scene,
    first_order_data,
    grid_remainder_study,
    remainder_study,
    shape_derivative_solve,
    solve_scene,
)
from shapetaylor.solvers import BoundaryKind, IncidentField, Medium
from shapetaylor.specfun import cyl_bessel, cyl_bessel_prime
from shapetaylor.symbolic import (
    drop_normal_variations,
    generate,
    reduce_first_order_2d,
    render_canonical,
    substitute,
    to_vector_proxy,
)
from shapetaylor.symbolic.proxy import VApply, VProduct, VSymbol

if TYPE_CHECKING:
    from collections.abc import Callable, Iterator

    import numpy.typing as npt

    from shapetaylor.config.app import RunConfig
    from shapetaylor.geometry import ClosedCurve
    from shapetaylor.solvers import SeriesSolution
    from shapetaylor.symbolic import SymbolicBC, VField, VSum

__all__ = ("SUITES", "remainder_cases", "verify_study")

LOGGER = logging.getLogger(__name__)

WRONSKIAN_TOLERANCE = 1e-12
WRONSKIAN_SAMPLES = 1000
SOLVER_WAVENUMBERS = (1.0, 2.0, 3.7)
CROSS_VALIDATION_TOLERANCE = 1e-8
JET_NODES = 256
JET_TOLERANCE = 1e-9
NORMAL_STEP = 1e-4
NORMAL_TOLERANCE = 1e-8
CONSTANT_NORMAL_TOLERANCE = 1e-13
MIXED_NORMAL_SYMMETRY = 1e-6
RADIUS_DERIVATIVE_TOLERANCE = {1: 1e-7, 2: 1e-6}
FD_STEP = 1e-2
FD_LEVELS = 3
FD_TOLERANCE = 1e-5
ZERO_TOLERANCE = 1e-14
REMAINDER_TS = tuple(0.1 / 2**i for i in range(7))
REMAINDER_POINTS = ((3.0, 0.0), (0.0, 3.0), (-2.5, -1.5), (1.0, -3.0))
GRID_TIMES = tuple(float(t) for t in np.geomspace(1e-3, 5e-2, 6))
GRID_SLOPE = 2.8
MIXED_DERIVATIVE_SYMMETRY = 1e-7

ORACLE_MEDIUM = Medium(alpha=1.0, alpha_inner=0.5, impedance=1.0)
STAR = StarCurve(a0=1.0, cos=(0.0, 0.0, 0.0, 0.1))
UNIT_SPEED = NormalSpeedField.constant(1.0)
COS2 = NormalSpeedField(cos=(0.0, 0.0, 1.0))
SYMBOLIC_BCS: tuple[SymbolicBC, ...] = ("dirichlet", "neumann", "impedance", "transmission")


def _relative(value: npt.ArrayLike, reference: npt.ArrayLike) -> tuple[float, float]:
    a = np.asarray(value, dtype=np.complex128)
    b = np.asarray(reference, dtype=np.complex128)
    scale = float(np.max(np.abs(b), initial=0.0))
    error = float(np.max(np.abs(a - b), initial=0.0))
    return error / max(scale, 1e-300), scale


def _check(suite: str, name: str, value: float, tolerance: float, detail: str = "") -> CheckResult:
    return CheckResult(
        suite=suite,
        name=name,
        value=value,
        tolerance=tolerance,
        passed=bool(value <= tolerance),
        detail=detail,
    )


def specfun_suite(config: RunConfig, report: StudyReport) -> None:
    """Wronskian ``J_n Y_n' - J_n' Y_n = 2 / (pi x)`` on random samples."""
    rng = np.random.default_rng(config.seed)
    n = rng.integers(0, 31, size=WRONSKIAN_SAMPLES)
    x = rng.uniform(0.1, 50.0, size=WRONSKIAN_SAMPLES)
    wronskian = cyl_bessel("J", n, x) * cyl_bessel_prime("Y", n, x) - cyl_bessel_prime(
        "J", n, x
    ) * cyl_bessel("Y", n, x)
    residual = float(np.max(np.abs(wronskian * np.pi * x / 2.0 - 1.0)))
    report.checks.append(
        _check("specfun", "Wronskian residual", residual, WRONSKIAN_TOLERANCE, "n <= 30")
    )


def _circle_scene(
    bc: BoundaryKind, k: float, backend: str, *, radius: float = 1.0, n_nodes: int = 256
) -> Scene:
    return Scene(
        curve=StarCurve(a0=radius),
        bc=bc,
        k=k,
        incident=IncidentField.plane_wave((1.0, 0.0), ORACLE_MEDIUM.exterior_wavenumber(k)),
        medium=ORACLE_MEDIUM,
        n_nodes=n_nodes,
        backend=backend,  # pyright: ignore[reportArgumentType]
    )


def solvers_suite(_config: RunConfig, report: StudyReport) -> None:
    """Nystrom against series solves on the unit circle at several wavenumbers."""
    angles = far_field_angles()
    for k in SOLVER_WAVENUMBERS:
        for bc in (BoundaryKind.SOFT, BoundaryKind.HARD, BoundaryKind.IMPEDANCE):
            series = solve_scene(_circle_scene(bc, k, "series"))
            nystrom = solve_scene(_circle_scene(bc, k, "nystrom"))
            far, _ = _relative(nystrom.far_field(angles), series.far_field(angles))
            trace, _ = _relative(nystrom.trace().values, series.trace().values)
            normal, _ = _relative(nystrom.normal_trace().values, series.normal_trace().values)
            report.checks += [
                _check("solvers", f"{bc} k={k:g} far field", far, CROSS_VALIDATION_TOLERANCE),
                _check("solvers", f"{bc} k={k:g} trace", trace, CROSS_VALIDATION_TOLERANCE),
                _check(
                    "solvers", f"{bc} k={k:g} normal trace", normal, CROSS_VALIDATION_TOLERANCE
                ),
            ]


def _test_curves() -> dict[str, ClosedCurve]:
    return {"circle": circle(1.0), "star": STAR.to_curve()}


def jets_suite(_config: RunConfig, report: StudyReport) -> None:
    """Jets rebuilt from Cauchy data against analytic jets of known fields."""
    fields = {
        "plane wave": IncidentField.plane_wave((0.6, -0.8), 2.0),
        "inner source": IncidentField.point_source((0.1, 0.2), 2.0),
    }
    for curve_name, curve in _test_curves().items():
        grid = build_grid(curve, JET_NODES)
        for field_name, field in fields.items():
            exact = field.jet(grid)
            built = build_jet((exact.u, exact.u_n), grid, field.wavenumber)
            error = max(
                (getattr(built, entry) - expected).max_abs() / max(1.0, expected.max_abs())
                for entry, expected in exact.items()
            )
            report.checks.append(
                _check("jets", f"{field_name} jet on the {curve_name}", error, JET_TOLERANCE)
            )


def geometry_suite(_config: RunConfig, report: StudyReport) -> None:
    """Normal variations against geometric differences of offset curves."""
    v = NormalSpeedField(cos=(0.1, 0.0, 0.3), sin=(0.0, 1.0))
    for name, curve in _test_curves().items():
        grid = build_grid(curve, JET_NODES)
        forward = build_grid(offset_curve(grid, v, NORMAL_STEP), grid.n_nodes)
        backward = build_grid(offset_curve(grid, v, -NORMAL_STEP), grid.n_nodes)
        difference = (forward.normal - backward.normal) / (2.0 * NORMAL_STEP)
        closed = as_complex(normal_shape_derivative(grid, v))
        constant = normal_shape_derivative(grid, NormalSpeedField.constant(0.7))
        report.checks += [
            _check(
                "geometry",
                f"normal variation on the {name}",
                float(np.max(np.abs(difference - closed))),
                NORMAL_TOLERANCE,
            ),
            _check(
                "geometry",
                f"constant speed keeps the {name} normal",
                float(np.max(np.abs(constant))),
                CONSTANT_NORMAL_TOLERANCE,
            ),
        ]

    grid = build_grid(STAR.to_curve(), 64)
    v1 = NormalSpeedField(sin=(0.0, 0.4, 0.2))
    v2 = NormalSpeedField(cos=(1.0, 0.3))
    first = normal_shape_derivative(grid, v1, order=2, v2=v2)
    second = normal_shape_derivative(grid, v2, order=2, v2=v1)
    report.checks.append(
        _check(
            "geometry",
            "mixed normal variation symmetry",
            float(np.max(np.abs(first - second))),
            MIXED_NORMAL_SYMMETRY,
        )
    )


def derivatives_suite(config: RunConfig, report: StudyReport) -> None:
    """Derivative norms and how well every derivative meets its own boundary data.

    A derivative along a zero velocity must vanish identically.
    """
    record = derive_record(config)
    for index in record.indices:
        label = derivative_label(index)
        derivative = record.derivative(*index)
        norm = cauchy_norm(derivative)
        report.norms[label] = norm
        if any(record.velocities[i].is_zero for i in index):
            report.checks.append(_check("derivatives", f"{label} vanishes", norm, ZERO_TOLERANCE))
            continue
        residual = derivative.boundary_residual()
        report.checks.append(
            _check(
                "derivatives",
                f"{label} boundary residual",
                residual / max(norm, 1.0),
                RESIDUAL_TOLERANCE,
            )
        )


def _ring(radius: float, count: int = 8) -> npt.NDArray[np.float64]:
    theta = 2.0 * np.pi * np.arange(count) / count
    return radius * np.column_stack((np.cos(theta), np.sin(theta)))


def _radius_oracle(config: RunConfig, report: StudyReport) -> None:
    radius = build_scene(config).radius or 1.0
    points = _ring(2.0 * radius)
    for bc in BoundaryKind:
        scene = _circle_scene(bc, config.scene.k, "series", radius=radius)
        record = shape_derivative_solve(scene, (UNIT_SPEED,), 2)
        base = cast("SeriesSolution", record.base)
        for order, index in ((1, (0,)), (2, (0, 0))):
            exact = base.radius_derivative(order).evaluate(points)
            error, scale = _relative(record.derivative(*index).evaluate(points), exact)
            report.oracle.append(
                OracleComparison(
                    label=f"{bc}{derivative_label(index)}",
                    oracle="radius derivative",
                    max_error=error * scale,
                    scale=scale,
                )
            )
            report.checks.append(
                _check(
                    "oracle",
                    f"{bc} order {order} against radius derivative",
                    error,
                    RADIUS_DERIVATIVE_TOLERANCE[order],
                )
            )


def _fd_comparisons(config: RunConfig, report: StudyReport) -> None:
    scene = build_scene(config)
    velocities = config.velocity_fields()
    points = np.asarray(config.points, dtype=np.float64).reshape(-1, 2)
    record = shape_derivative_solve(scene, velocities[:2], config.order)
    indices = [(0,)] if config.order == 1 else [(0,), (0, len(record.velocities) - 1)]
    for index in indices:
        label = derivative_label(index)
        second = record.velocities[index[1]] if len(index) == 2 else None
        try:
            estimate = fd_oracle(
                scene, record.velocities[0], FD_STEP, FD_LEVELS, second=second, points=points
            )
        except UnsupportedError as exc:
            LOGGER.warning("No finite-difference oracle for %s: %s", label, exc.detail)
            continue
        except OracleInconclusiveError as exc:
            report.checks.append(
                CheckResult(
                    suite="oracle",
                    name=f"{label} against finite differences",
                    value=float(exc.extension["spread"]),
                    tolerance=float(exc.extension["tolerance"]),
                    passed=False,
                    detail="inconclusive",
                )
            )
            continue
        error, scale = _relative(record.derivative(*index).evaluate(points), estimate.values)
        tolerance = FD_TOLERANCE + 10.0 * estimate.error_bar / max(scale, 1.0)
        report.oracle.append(
            OracleComparison(
                label=label,
                oracle="finite differences",
                max_error=error * scale,
                scale=scale,
                error_bar=estimate.error_bar,
            )
        )
        report.checks.append(
            _check(
                "oracle",
                f"{label} against finite differences",
                error * scale / max(scale, 1.0),
                tolerance,
            )
        )


def oracle_suite(config: RunConfig, report: StudyReport) -> None:
    """Recursion against radius derivatives of the series and against finite differences."""
    _radius_oracle(config, report)
    _fd_comparisons(config, report)


def remainder_cases() -> Iterator[tuple[str, Scene, NormalSpeedField]]:
    """Scenes and speeds of the standard remainder sweep.

    Circles run every boundary condition under a constant and a ``cos 2 theta``
    speed; the star ``r = 1 + 0.1 cos 3 theta`` runs soft, hard and impedance
    under ``cos 2 theta``. Transmission needs a circle after the motion too, so
    it runs under the constant speed only.
    """
    for bc in BoundaryKind:
        yield f"circle {bc} v=1", _circle_scene(bc, 1.0, "auto"), UNIT_SPEED
        if bc is not BoundaryKind.TRANSMISSION:
            yield f"circle {bc} v=cos2", _circle_scene(bc, 1.0, "auto"), COS2
    for bc in (BoundaryKind.SOFT, BoundaryKind.HARD, BoundaryKind.IMPEDANCE):
        scene = Scene(
            curve=STAR,
            bc=bc,
            k=1.0,
            incident=IncidentField.plane_wave((0.6, 0.8), 1.0),
            medium=ORACLE_MEDIUM,
        )
        yield f"star {bc} v=cos2", scene, COS2


def _grid_remainder(report: StudyReport) -> None:
    scene = _circle_scene(BoundaryKind.SOFT, 1.0, "auto")
    record = shape_derivative_solve(scene, (UNIT_SPEED, COS2), 2)
    swapped = shape_derivative_solve(scene, (COS2, UNIT_SPEED), 2)
    forward = record.derivative(0, 1).trace()
    symmetry = (forward - swapped.derivative(0, 1).trace()).max_abs() / max(
        forward.max_abs(), 1e-300
    )
    report.checks.append(
        _check("remainder", "mixed derivative symmetry", symmetry, MIXED_DERIVATIVE_SYMMETRY)
    )

    times = [(t1, t2) for t1 in GRID_TIMES for t2 in GRID_TIMES]
    study = grid_remainder_study(record, times, REMAINDER_POINTS)
    slope = None if study.fit is None else study.fit.slope
    report.checks.append(
        CheckResult(
            suite="remainder",
            name="two-field order 2 remainder slope",
            value=0.0 if slope is None else slope,
            tolerance=GRID_SLOPE,
            passed=slope is not None and slope >= GRID_SLOPE,
            detail=f"upper envelope over max(t1, t2), {len(times)} grid points",
        )
    )


def remainder_suite(config: RunConfig, report: StudyReport) -> None:
    """Remainder slopes of the configured expansion, the standard sweep and a time grid."""
    taylor_study(config, report, suite="remainder")
    for label, scene, v in remainder_cases():
        record = shape_derivative_solve(scene, (v,), 2)
        study = remainder_study(record, REMAINDER_TS, REMAINDER_POINTS)
        report.checks += slope_checks(RemainderSummary.from_study(study), "remainder", label)
    _grid_remainder(report)


def _proxy_text(bc: SymbolicBC, dim: int, degree: int, *, general: bool) -> str:
    expr = generate(bc, 2, dim, degree, general_velocity=general)
    return render_canonical(to_vector_proxy(expr, dim, degree))


def _magnetic_flux(field: VField) -> VProduct:
    return VProduct((VSymbol("alpha"), VApply("curl", field)))


def symbolic_suite(_config: RunConfig, report: StudyReport) -> None:
    """Consistency of the symbolic engine with itself and with the numeric data."""
    mismatches: list[str] = []
    for bc in SYMBOLIC_BCS:
        for dim, degree in ((2, 0), (3, 1)):
            general = generate(bc, 2, dim, degree, general_velocity=True)
            if drop_normal_variations(general) != generate(bc, 2, dim, degree):
                mismatches.append(f"{bc} d={dim} l={degree} constant speed")

    electric = to_vector_proxy(generate("dirichlet", 2, 3, 1, general_velocity=True), 3, 1)
    magnetic = _proxy_text("neumann", 3, 1, general=True)
    if render_canonical(substitute(electric, _magnetic_flux)) != magnetic:
        mismatches.append("magnetic datum by substitution")

    grid = build_grid(STAR.to_curve(), 64)
    jet = IncidentField.plane_wave((1.0, 0.0), 2.0).jet(grid)
    speed = NormalSpeedField(cos=(0.1, 0.3))
    reductions: tuple[tuple[SymbolicBC, BoundaryKind], ...] = (
        ("dirichlet", BoundaryKind.SOFT),
        ("neumann", BoundaryKind.HARD),
    )
    for bc, kind in reductions:
        # first-order planar proxies are always sums
        proxy = cast("VSum", to_vector_proxy(generate(bc, 1, general_velocity=True)))
        formula = first_order_data(kind, jet, speed, grid).provenance.formula
        if reduce_first_order_2d(proxy) != formula:
            mismatches.append(f"{bc} boundary formula")

    report.checks.append(
        _check(
            "symbolic",
            "symbolic consistency",
            float(len(mismatches)),
            0.0,
            "; ".join(mismatches),
        )
    )


def determinism_suite(config: RunConfig, report: StudyReport) -> None:
    """Two ``derive`` runs of the same configuration encode to identical bytes."""
    derive = msgspec.structs.replace(config, command="derive")
    encoded = []
    for _ in range(2):
        fresh = StudyReport(command="derive", version=__version__, config=derive)
        derive_study(derive, fresh)
        encoded.append(fresh.encode())
    first, second = encoded
    report.checks.append(
        _check("determinism", "identical derive reports", float(first != second), 0.0)
    )


SUITES: dict[str, Callable[[RunConfig, StudyReport], None]] = {
    "specfun": specfun_suite,
    "solvers": solvers_suite,
    "jets": jets_suite,
    "geometry": geometry_suite,
    "derivatives": derivatives_suite,
    "oracle": oracle_suite,
    "remainder": remainder_suite,
    "symbolic": symbolic_suite,
    "determinism": determinism_suite,
}


def verify_study(config: RunConfig, report: StudyReport) -> None:
    """Run the suite named by ``config.suite``, or every suite for ``"all"``."""
    names = VERIFY_SUITES if config.suite == "all" else (config.suite,)
    for name in names:
        LOGGER.info("Running verification suite %r", name)
        with timed(report, name):
            SUITES[name](config, report)
    for check in report.failures():
        LOGGER.warning(
            "%s: %s failed (%.3e vs %.3e)",
            check.suite,
            check.name,
            check.value,
            check.tolerance,
        )
