from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import pytest

from shapetaylor.boundary_calculus import (
    BoundaryJet,
    BoundaryScalar,
    GridMismatchError,
    build_jet,
    spectral_derivative,
)
from shapetaylor.geometry import build_grid, circle
from shapetaylor.solvers import IncidentField
from tests.oracles import hankel0_point_source_jet

if TYPE_CHECKING:
    from shapetaylor.geometry import BoundaryGrid

FIELDS = {
    "plane wave": IncidentField.plane_wave((0.6, -0.8), 2.0),
    "inner source": IncidentField.point_source((0.1, 0.2), 2.0),
    "outer source": IncidentField.point_source((3.0, 1.0), 2.0),
}


def _from_cauchy(field: IncidentField, grid: BoundaryGrid) -> tuple[BoundaryJet, BoundaryJet]:
    exact = field.jet(grid)
    built = build_jet((exact.u, exact.u_n), grid, field.wavenumber, 1.0)
    return built, exact


@pytest.mark.parametrize("name", list(FIELDS))
@pytest.mark.parametrize("grid_name", ["unit_circle_grid", "star_grid"])
def test_jet_reproduces_analytic_derivatives(
    request: pytest.FixtureRequest, name: str, grid_name: str
) -> None:
    grid: BoundaryGrid = request.getfixturevalue(grid_name)
    built, exact = _from_cauchy(FIELDS[name], grid)

    for entry, expected in exact.items():
        scale = max(1.0, expected.max_abs())
        error = (getattr(built, entry) - expected).max_abs()
        assert error <= 1e-9 * scale, entry


def test_outgoing_wave_on_circle_obeys_bessel_equation() -> None:
    a, k = 1.3, 1.7
    grid = build_grid(circle(a), 128)
    source = IncidentField.point_source((0.0, 0.0), k)
    exact = source.jet(grid)

    jet = build_jet((exact.u, exact.u_n), grid, k, 1.0)

    assert jet.u_ss.max_abs() < 1e-11
    expected = -(k**2) * jet.u.values - jet.u_n.values / a
    np.testing.assert_allclose(jet.u_nn.values, expected, atol=1e-12)


def test_jet_scales_with_medium_coefficient(unit_circle_grid: BoundaryGrid) -> None:
    alpha = 2.5
    wave = IncidentField.plane_wave((1.0, 0.0), 1.2)
    exact = wave.jet(unit_circle_grid, alpha)

    built = build_jet((exact.u, exact.u_n), unit_circle_grid, exact.k, alpha)

    assert built.helmholtz_residual() < 1e-10
    assert (built.u_nnn - exact.u_nnn).max_abs() < 1e-9 * max(1.0, exact.u_nnn.max_abs())


def test_point_source_jet_matches_extended_precision(star_grid: BoundaryGrid) -> None:
    k, source = 2.0, (0.1, 0.2)
    exact = IncidentField.point_source(source, k).jet(star_grid)

    for j in (0, 37, 101, 200):
        point = tuple(star_grid.points[j])
        normal = tuple(star_grid.normals[j])
        oracle = hankel0_point_source_jet(k, source, point, normal)
        for order, entry in enumerate(("u", "u_n", "u_nn", "u_nnn")):
            value = getattr(exact, entry).values[j]
            assert value == pytest.approx(oracle[f"d{order}"], rel=1e-10, abs=1e-12)


def test_zero_data_give_zero_jet(star_grid: BoundaryGrid) -> None:
    zero = BoundaryScalar.zeros(star_grid)

    jet = build_jet((zero, zero), star_grid, 3.0, 1.0)

    for _, value in jet.items():
        assert value.max_abs() == 0.0


def test_tangential_derivative_of_normal_trace(star_grid: BoundaryGrid) -> None:
    built, _ = _from_cauchy(FIELDS["plane wave"], star_grid)

    difference = spectral_derivative(built.u_n, "s") - built.u_ns
    assert difference.max_abs() < 1e-12


def test_inconsistent_grids_rejected(star_grid: BoundaryGrid) -> None:
    small = build_grid(circle(1.0), 64)
    with pytest.raises(GridMismatchError):
        build_jet(
            (BoundaryScalar.zeros(small), BoundaryScalar.zeros(small)), star_grid, 1.0, 1.0
        )
