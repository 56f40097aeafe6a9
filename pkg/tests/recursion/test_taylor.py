from __future__ import annotations

import numpy as np
import pytest

from shapetaylor.geometry import NormalSpeedField, StarCurve
from shapetaylor.lib.exceptions import DomainError, UnsupportedError
from shapetaylor.recursion import (
    Scene,
    SweptRegionError,
    UnsupportedOrderError,
    grid_remainder_study,
    perturbed_scene,
    remainder_study,
    shape_derivative_solve,
    solve_scene,
    taylor_evaluate,
    taylor_far_field,
)
from shapetaylor.solvers import BoundaryKind, IncidentField, Medium

MEDIUM = Medium(alpha_inner=1.8, impedance=0.5)
UNIT_SPEED = NormalSpeedField.constant(1.0)
COS2 = NormalSpeedField(cos=(0.0, 0.0, 1.0))
SIN1 = NormalSpeedField(sin=(0.0, 0.6))
POINTS = np.array([[3.0, 0.0], [0.0, 3.0], [-2.5, -1.5], [1.0, -3.0]])


def _circle_scene(bc: BoundaryKind, k: float = 1.0) -> Scene:
    return Scene(
        curve=StarCurve(a0=1.0),
        bc=bc,
        k=k,
        incident=IncidentField.plane_wave((1.0, 0.0), MEDIUM.exterior_wavenumber(k)),
        medium=MEDIUM,
    )


def _star_scene(bc: BoundaryKind) -> Scene:
    return Scene(
        curve=StarCurve(a0=1.0, cos=(0.0, 0.0, 0.0, 0.1)),
        bc=bc,
        k=1.0,
        incident=IncidentField.plane_wave((0.6, 0.8), 1.0),
        medium=MEDIUM,
    )


@pytest.mark.parametrize("bc", list(BoundaryKind))
def test_constant_speed_matches_radius_derivatives(bc: BoundaryKind) -> None:
    record = shape_derivative_solve(_circle_scene(bc), [UNIT_SPEED], order=2)
    base = record.base
    assert base.backend == "series"

    first = base.radius_derivative(1).trace()  # pyright: ignore[reportAttributeAccessIssue]
    second = base.radius_derivative(2).trace()  # pyright: ignore[reportAttributeAccessIssue]
    assert (record.derivative(0).trace() - first).max_abs() <= 1e-7 * first.max_abs()
    assert (record.derivative(0, 0).trace() - second).max_abs() <= 1e-6 * second.max_abs()


def test_zero_velocity_gives_zero_derivatives() -> None:
    record = shape_derivative_solve(_star_scene(BoundaryKind.HARD), [NormalSpeedField()], order=2)
    assert np.max(np.abs(record.derivative(0).evaluate(POINTS))) == pytest.approx(0.0, abs=1e-14)
    assert np.max(np.abs(record.derivative(0, 0).evaluate(POINTS))) == pytest.approx(0.0, abs=1e-14)


def test_zero_time_gives_base_field() -> None:
    record = shape_derivative_solve(_circle_scene(BoundaryKind.SOFT), [UNIT_SPEED], order=2)
    np.testing.assert_array_equal(taylor_evaluate(record, POINTS, 0.0), record.base.evaluate(POINTS))
    np.testing.assert_array_equal(
        taylor_far_field(record, np.linspace(0.0, np.pi, 5), 0.0),
        record.base.far_field(np.linspace(0.0, np.pi, 5)),
    )


def test_single_field_expansion_equals_repeated_field_form() -> None:
    scene = _star_scene(BoundaryKind.HARD)
    single = shape_derivative_solve(scene, [COS2], order=2)
    repeated = shape_derivative_solve(scene, [COS2, COS2], order=2)
    t = 0.01
    np.testing.assert_allclose(
        taylor_evaluate(repeated, POINTS, (t, t)),
        taylor_evaluate(single, POINTS, 2 * t),
        rtol=1e-10,
    )


def test_mixed_derivative_symmetric_in_field_order() -> None:
    scene = _star_scene(BoundaryKind.IMPEDANCE)
    forward = shape_derivative_solve(scene, [COS2, SIN1], order=2)
    backward = shape_derivative_solve(scene, [SIN1, COS2], order=2)
    a = forward.derivative(0, 1).trace()
    b = backward.derivative(1, 0).trace()
    assert (a - b).max_abs() <= 1e-7 * a.max_abs()
    assert forward.derivative(1, 0) is forward.derivative(0, 1)


def test_finite_difference_mixed_normal_agrees_on_circle() -> None:
    scene = Scene(
        curve=StarCurve(a0=1.0),
        bc=BoundaryKind.HARD,
        k=1.0,
        incident=IncidentField.plane_wave((1.0, 0.0), 1.0),
        n_nodes=64,
    )
    closed = shape_derivative_solve(scene, [SIN1, COS2], order=2)
    fd = shape_derivative_solve(scene, [SIN1, COS2], order=2, mixed_normal="finite_difference")
    assert fd.problem(0, 1).provenance.mixed_normal == "finite_difference"
    a = closed.derivative(0, 1).trace()
    b = fd.derivative(0, 1).trace()
    assert (a - b).max_abs() <= 1e-5 * a.max_abs()


@pytest.mark.parametrize(
    "scene, v",
    [
        (_circle_scene(BoundaryKind.SOFT), UNIT_SPEED),
        (_star_scene(BoundaryKind.HARD), COS2),
        (_star_scene(BoundaryKind.SOFT), SIN1),
    ],
)
def test_first_derivative_far_field_matches_central_difference(scene: Scene, v: NormalSpeedField) -> None:
    record = shape_derivative_solve(scene, [v], order=1)
    angles = np.linspace(0.0, 2 * np.pi, 12, endpoint=False)
    t = 1e-3
    plus = solve_scene(perturbed_scene(record, v, t)).far_field(angles)
    minus = solve_scene(perturbed_scene(record, v, -t)).far_field(angles)
    estimate = (plus - minus) / (2 * t)
    derivative = record.derivative(0).far_field(angles)
    assert np.max(np.abs(derivative - estimate)) <= 1e-4 * np.max(np.abs(derivative))


def test_points_in_swept_region_are_rejected() -> None:
    record = shape_derivative_solve(_circle_scene(BoundaryKind.SOFT), [UNIT_SPEED], order=1)
    with pytest.raises(SweptRegionError):
        taylor_evaluate(record, [[1.05, 0.0]], 0.1)


def test_third_order_points_at_symbolic_engine() -> None:
    with pytest.raises(UnsupportedOrderError, match="symbolic"):
        shape_derivative_solve(_circle_scene(BoundaryKind.SOFT), [UNIT_SPEED], order=3)


def test_transmission_needs_constant_speed_for_direct_solves() -> None:
    record = shape_derivative_solve(_circle_scene(BoundaryKind.TRANSMISSION), [COS2], order=1)
    with pytest.raises(UnsupportedError):
        perturbed_scene(record, COS2, 0.01)


def test_series_backend_rejects_other_curves() -> None:
    scene = Scene(
        curve=StarCurve(a0=1.0, cos=(0.0, 0.2)),
        bc=BoundaryKind.SOFT,
        k=1.0,
        incident=IncidentField.plane_wave((1.0, 0.0), 1.0),
        backend="series",
    )
    with pytest.raises(UnsupportedError):
        solve_scene(scene)


def _remainder_cases() -> dict[str, tuple[Scene, NormalSpeedField]]:
    cases = {}
    for bc in BoundaryKind:
        cases[f"circle {bc} v=1"] = (_circle_scene(bc), UNIT_SPEED)
        # direct transmission solves need the moved curve to stay a circle
        if bc is not BoundaryKind.TRANSMISSION:
            cases[f"circle {bc} v=cos2"] = (_circle_scene(bc), COS2)
    for bc in (BoundaryKind.SOFT, BoundaryKind.HARD, BoundaryKind.IMPEDANCE):
        cases[f"star {bc} v=cos2"] = (_star_scene(bc), COS2)
    return cases


REMAINDER_CASES = _remainder_cases()
REMAINDER_TS = [0.1 / 2**i for i in range(7)]
GRID_TIMES = np.geomspace(1e-3, 5e-2, 6)


@pytest.mark.slow
@pytest.mark.parametrize("name", list(REMAINDER_CASES))
def test_remainder_slopes(name: str) -> None:
    scene, v = REMAINDER_CASES[name]
    record = shape_derivative_solve(scene, [v], order=2)
    study = remainder_study(record, REMAINDER_TS, POINTS, threads=2)
    first, second, third = (study.fits[order] for order in (0, 1, 2))
    assert first is not None
    assert second is not None
    assert third is not None

    assert 0.9 <= first.slope <= 1.3
    assert 1.9 <= second.slope <= 2.3
    assert third.slope >= 2.9
    assert third.residual < 0.15


def test_remainder_sweep_reaches_small_times() -> None:
    assert REMAINDER_TS[0] == 0.1
    assert 1e-3 < REMAINDER_TS[-1] < 2e-3
    assert len(REMAINDER_CASES) == 10


@pytest.mark.slow
def test_two_field_remainder_slope() -> None:
    record = shape_derivative_solve(_star_scene(BoundaryKind.HARD), [COS2, SIN1], order=2)
    ts = [0.1 / 2**i for i in range(5)]
    study = remainder_study(record, ts, POINTS, weights=(1.0, -0.5), threads=2)
    assert study.fits[2].slope >= 2.9  # pyright: ignore[reportOptionalMemberAccess]


@pytest.mark.slow
def test_two_field_grid_remainder_is_cubic_in_largest_time() -> None:
    record = shape_derivative_solve(_circle_scene(BoundaryKind.SOFT), [UNIT_SPEED, COS2], order=2)
    times = [(t1, t2) for t1 in GRID_TIMES for t2 in GRID_TIMES]

    study = grid_remainder_study(record, times, POINTS, threads=2)

    assert len(study.errors) == 36
    np.testing.assert_allclose(study.sizes, GRID_TIMES)
    assert study.fit is not None
    assert study.fit.slope >= 2.8


def test_grid_remainder_envelope_takes_largest_error_per_size() -> None:
    record = shape_derivative_solve(_circle_scene(BoundaryKind.SOFT), [UNIT_SPEED, COS2], order=1)
    times = [(0.01, 0.01), (0.02, 0.01), (0.01, 0.02), (0.02, 0.02)]

    study = grid_remainder_study(record, times, POINTS, threads=2)

    assert study.order == 1
    assert study.sizes == [0.01, 0.02]
    assert study.envelope == [study.errors[0], max(study.errors[1:])]
    assert study.fit is None


def test_grid_remainder_rejects_bad_grid_points() -> None:
    record = shape_derivative_solve(_circle_scene(BoundaryKind.SOFT), [UNIT_SPEED, COS2], order=1)
    with pytest.raises(DomainError, match="times per grid point"):
        grid_remainder_study(record, [(0.01,)], POINTS)
    with pytest.raises(DomainError, match="move the curve"):
        grid_remainder_study(record, [(0.0, 0.0)], POINTS)
