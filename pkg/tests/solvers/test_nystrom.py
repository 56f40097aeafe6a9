from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np
import pytest

from shapetaylor.boundary_calculus import BoundaryScalar
from shapetaylor.geometry import StarCurve, build_grid, circle
from shapetaylor.solvers import (
    AccuracyGuardError,
    BoundaryKind,
    IncidentField,
    Medium,
    NearResonanceError,
    NystromSolver,
    UnsupportedBoundaryError,
    boundary_data_from_jet,
    evaluate_field,
    far_field,
    nystrom_scatter,
    nystrom_solve,
    series_solve,
)

if TYPE_CHECKING:
    from shapetaylor.geometry import BoundaryGrid

IMPENETRABLE = [BoundaryKind.SOFT, BoundaryKind.HARD, BoundaryKind.IMPEDANCE]
MEDIUM = Medium(impedance=0.8)


def _relative(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)) / np.max(np.abs(b)))


@pytest.mark.parametrize("bc", IMPENETRABLE)
@pytest.mark.parametrize("k", [1.0, 2.0, 3.7])
def test_backends_agree_on_circle(bc: BoundaryKind, k: float) -> None:
    wave = IncidentField.plane_wave((0.8, 0.6), k)
    series = series_solve(1.0, bc, k, wave, medium=MEDIUM, n_nodes=256)
    nystrom = nystrom_scatter(series.grid, bc, k, wave, MEDIUM)

    assert _relative(nystrom.trace().values, series.trace().values) <= 1e-8
    assert _relative(nystrom.normal_trace().values, series.normal_trace().values) <= 1e-8
    angles = np.linspace(0.0, 2 * np.pi, 17)
    assert _relative(far_field(nystrom, angles), far_field(series, angles)) <= 1e-7


def test_zero_data_give_zero_density(star_grid: BoundaryGrid) -> None:
    sol = nystrom_solve(star_grid, BoundaryKind.SOFT, BoundaryScalar.zeros(star_grid), 2.0)

    assert np.max(np.abs(sol.density)) == 0.0
    assert np.max(np.abs(evaluate_field(sol, [[3.0, 0.0]]))) == 0.0
    assert np.max(np.abs(far_field(sol, [0.0, 1.0]))) == 0.0


@pytest.mark.parametrize("bc", IMPENETRABLE)
def test_manufactured_point_source(star_grid: BoundaryGrid, bc: BoundaryKind) -> None:
    k = 2.0
    source = IncidentField.point_source((0.15, -0.1), k)
    data = boundary_data_from_jet(bc, source.jet(star_grid), MEDIUM)

    sol = nystrom_solve(star_grid, bc, data, k, MEDIUM)

    points = np.array([[2.0, 0.5], [-1.5, -2.0], [0.0, 3.0]])
    np.testing.assert_allclose(evaluate_field(sol, points), source.value(points), rtol=1e-9)
    np.testing.assert_allclose(
        evaluate_field(sol, points, gradient=True), source.gradient(points), rtol=1e-8
    )
    assert sol.boundary_residual() <= 1e-8


def test_far_field_of_point_source() -> None:
    k = 2.0
    grid = build_grid(circle(1.0), 128)
    location = (0.2, 0.3)
    source = IncidentField.point_source(location, k)
    sol = nystrom_solve(grid, BoundaryKind.SOFT, BoundaryScalar(grid, source.value(grid.points)), k)

    angles = np.array([0.0, 1.0, 2.5])
    directions = np.stack([np.cos(angles), np.sin(angles)], axis=-1)
    expected = (
        math.sqrt(2.0 / (math.pi * k))
        * np.exp(-0.25j * math.pi)
        * np.exp(-1j * k * directions @ np.array(location))
    )
    np.testing.assert_allclose(far_field(sol, angles), expected, rtol=1e-9)


def test_spectral_convergence() -> None:
    k = 2.0
    curve = StarCurve(a0=1.0, cos=(0.0, 0.0, 0.0, 0.2)).to_curve()
    source = IncidentField.point_source((0.1, 0.05), k)
    point = np.array([[2.5, 1.0]])
    errors = []
    for n_nodes in (32, 64, 96):
        grid = build_grid(curve, n_nodes)
        sol = nystrom_solve(grid, BoundaryKind.SOFT, BoundaryScalar(grid, source.value(grid.points)), k)
        errors.append(abs(evaluate_field(sol, point)[0] - source.value(point)[0]))

    for coarse, fine in zip(errors, errors[1:], strict=False):
        assert fine <= max(coarse / 2, 1e-13)


def test_factorisation_is_reused(star_grid: BoundaryGrid) -> None:
    solver = NystromSolver(star_grid, BoundaryKind.HARD, 1.5)
    first = solver.solve(BoundaryScalar(star_grid, np.cos(star_grid.theta)))
    second = first.solve_data(BoundaryScalar(star_grid, np.sin(2 * star_grid.theta)))

    assert second.solver is solver
    np.testing.assert_allclose(second.normal_trace().values, np.sin(2 * star_grid.theta), atol=1e-10)


def test_points_near_boundary_are_rejected(unit_circle_grid: BoundaryGrid) -> None:
    sol = nystrom_solve(
        unit_circle_grid, BoundaryKind.SOFT, BoundaryScalar.zeros(unit_circle_grid), 1.0
    )

    with pytest.raises(AccuracyGuardError):
        evaluate_field(sol, [[1.0 + unit_circle_grid.spacing, 0.0]])


def test_interior_dirichlet_eigenvalue_is_flagged() -> None:
    grid = build_grid(circle(1.0), 64)

    with pytest.raises(NearResonanceError):
        NystromSolver(grid, BoundaryKind.SOFT, 2.404825557695773)


def test_transmission_is_not_supported(unit_circle_grid: BoundaryGrid) -> None:
    with pytest.raises(UnsupportedBoundaryError):
        NystromSolver(unit_circle_grid, BoundaryKind.TRANSMISSION, 1.0)
