from __future__ import annotations

import numpy as np
import pytest

from shapetaylor.geometry import NormalSpeedField, StarCurve
from shapetaylor.harness import OracleInconclusiveError, fd_oracle, richardson
from shapetaylor.lib.exceptions import DomainError
from shapetaylor.recursion import Scene, solve_scene
from shapetaylor.solvers import BoundaryKind, IncidentField

POINTS = np.array([[2.5, 0.0], [0.0, -3.0], [-2.0, 2.0]])


def _circle_scene(bc: BoundaryKind) -> Scene:
    return Scene(
        curve=StarCurve(a0=1.0),
        bc=bc,
        k=2.0,
        incident=IncidentField.plane_wave((1.0, 0.0), 2.0),
    )


def test_constant_function_has_zero_derivative() -> None:
    table = richardson(lambda h: (5.0 - 5.0) / (2.0 * h), 0.1, 2)
    assert np.all(table.estimate == 0.0)
    assert table.spread == 0.0


def test_extrapolated_sine_derivative() -> None:
    table = richardson(lambda h: (np.sin(1.0 + h) - np.sin(1.0 - h)) / (2.0 * h), 0.1, 3)
    assert abs(table.estimate - np.cos(1.0)) <= 1e-10
    assert table.levels == 3
    assert len(table.diagonal_spreads()) == 3


def test_diverging_quotient_is_inconclusive() -> None:
    with pytest.raises(OracleInconclusiveError):
        richardson(lambda h: 1.0 / h, 0.1, 1)


def test_single_level_compares_the_two_diagonal_entries() -> None:
    table = richardson(lambda h: (np.sin(1.0 + h) - np.sin(1.0 - h)) / (2.0 * h), 1e-3, 1)
    assert table.spread == pytest.approx(table.diagonal_spreads()[-1])
    assert abs(table.estimate - np.cos(1.0)) <= 1e-10


def test_error_bar_tracks_the_extrapolated_entries() -> None:
    table = richardson(lambda h: (np.sin(1.0 + h) - np.sin(1.0 - h)) / (2.0 * h), 0.1, 2)
    assert table.spread == table.diagonal_spreads()[-1]
    assert table.spread < 1e-6
    assert abs(table.estimate - np.cos(1.0)) <= table.spread


def test_richardson_needs_a_level() -> None:
    with pytest.raises(DomainError):
        richardson(lambda h: h, 0.1, 0)


@pytest.mark.parametrize("bc", [BoundaryKind.SOFT, BoundaryKind.HARD])
def test_radius_sweep_matches_series_radius_derivative(bc: BoundaryKind) -> None:
    scene = _circle_scene(bc)
    estimate = fd_oracle(scene, NormalSpeedField.constant(1.0), 1e-3, 2, points=POINTS)
    exact = solve_scene(scene).radius_derivative(1).evaluate(POINTS)  # pyright: ignore[reportAttributeAccessIssue]
    assert estimate.order == 1
    assert estimate.solves == 6
    assert np.max(np.abs(estimate.values - exact)) <= 1e-6


def test_far_field_estimate() -> None:
    scene = _circle_scene(BoundaryKind.SOFT)
    angles = np.linspace(0.0, np.pi, 5)
    estimate = fd_oracle(scene, NormalSpeedField.constant(1.0), 1e-3, 2, angles=angles)
    exact = solve_scene(scene).radius_derivative(1).far_field(angles)  # pyright: ignore[reportAttributeAccessIssue]
    assert estimate.quantity == "far_field"
    assert np.max(np.abs(estimate.values - exact)) <= 1e-6


def test_mixed_estimate_with_zero_second_velocity() -> None:
    estimate = fd_oracle(
        _circle_scene(BoundaryKind.SOFT),
        NormalSpeedField.constant(1.0),
        1e-3,
        2,
        second=NormalSpeedField(),
        points=POINTS,
    )
    assert estimate.order == 2
    assert np.max(np.abs(estimate.values)) <= 1e-8


def test_observer_must_be_unique() -> None:
    with pytest.raises(DomainError):
        fd_oracle(_circle_scene(BoundaryKind.SOFT), NormalSpeedField.constant(1.0), 1e-3)
