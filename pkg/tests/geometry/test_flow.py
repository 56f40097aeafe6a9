from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import pytest

from shapetaylor.geometry import (
    NormalSpeedField,
    PerturbationTooLargeError,
    as_complex,
    build_grid,
    circle,
    compose_offsets,
    normal_shape_derivative,
    offset_curve,
)
from shapetaylor.recursion import mixed_normal_closed_form

if TYPE_CHECKING:
    from shapetaylor.geometry import BoundaryGrid, ClosedCurve


def test_constant_offset_of_circle_is_circle(unit_circle_grid: BoundaryGrid) -> None:
    curve = offset_curve(unit_circle_grid, NormalSpeedField.constant(0.5), 0.2)

    np.testing.assert_allclose(np.abs(curve.samples), 1.1, atol=1e-13)


def test_zero_offset_is_identity(star_grid: BoundaryGrid) -> None:
    curve = offset_curve(star_grid, NormalSpeedField(cos=(0.0, 0.3), sin=(0.0, 0.2)), 0.0)

    np.testing.assert_allclose(curve.samples, star_grid.z, atol=0.0)


def test_offset_along_cosine_field(unit_circle_grid: BoundaryGrid) -> None:
    v = NormalSpeedField(cos=(0.0, 0.0, 1.0))
    curve = offset_curve(unit_circle_grid, v, 0.05)

    assert abs(curve.samples[0]) == pytest.approx(1.05, abs=1e-14)


def test_constant_flows_compose(unit_circle_grid: BoundaryGrid) -> None:
    v = NormalSpeedField.constant(1.0)
    stepped = compose_offsets(unit_circle_grid, (v, v), (0.03, 0.04))
    direct = offset_curve(unit_circle_grid, v, 0.07)

    np.testing.assert_allclose(stepped.samples, direct.samples, atol=1e-12)


def test_reach_guard(unit_circle_grid: BoundaryGrid) -> None:
    with pytest.raises(PerturbationTooLargeError):
        offset_curve(unit_circle_grid, NormalSpeedField.constant(2.0), -0.45)


def test_constant_speed_leaves_normal_unchanged(star_grid: BoundaryGrid) -> None:
    delta_n = normal_shape_derivative(star_grid, NormalSpeedField.constant(0.7))

    np.testing.assert_allclose(delta_n, 0.0, atol=1e-13)


def test_sine_speed_on_circle(unit_circle_grid: BoundaryGrid) -> None:
    grid = unit_circle_grid
    delta_n = normal_shape_derivative(grid, NormalSpeedField(sin=(0.0, 1.0)))

    expected = -np.cos(grid.theta)[:, None] * grid.tangents
    np.testing.assert_allclose(delta_n, expected, atol=1e-12)


@pytest.mark.parametrize("name", ["circle", "star"])
def test_first_order_matches_geometric_differences(
    request: pytest.FixtureRequest, name: str
) -> None:
    grid: BoundaryGrid = request.getfixturevalue(
        "unit_circle_grid" if name == "circle" else "star_grid"
    )
    v = NormalSpeedField(cos=(0.1, 0.0, 0.3), sin=(0.0, 1.0))
    t = 1e-4

    forward = build_grid(offset_curve(grid, v, t), grid.n_nodes)
    backward = build_grid(offset_curve(grid, v, -t), grid.n_nodes)
    difference = (forward.normal - backward.normal) / (2 * t)

    closed_form = as_complex(normal_shape_derivative(grid, v))
    np.testing.assert_allclose(difference, closed_form, atol=1e-8)


def test_mixed_normal_derivative_on_circle() -> None:
    grid = build_grid(circle(1.0), 64)
    v1 = NormalSpeedField(sin=(0.0, 1.0))
    v2 = NormalSpeedField(cos=(0.2, 0.0, 0.5))
    theta = grid.theta

    mixed = as_complex(normal_shape_derivative(grid, v1, order=2, v2=v2))

    a, a_s = v1.evaluate(theta), v1.evaluate(theta, 1)
    b, b_s = v2.evaluate(theta), v2.evaluate(theta, 1)
    expected = -a_s * b_s * grid.normal + (a * b_s + b * a_s) * grid.tangent
    np.testing.assert_allclose(mixed, expected, atol=1e-6)


def test_mixed_normal_derivative_is_symmetric(star_grid_curve: ClosedCurve) -> None:
    grid = build_grid(star_grid_curve, 64)
    v1 = NormalSpeedField(sin=(0.0, 0.4, 0.2))
    v2 = NormalSpeedField(cos=(1.0, 0.3))

    first = normal_shape_derivative(grid, v1, order=2, v2=v2)
    second = normal_shape_derivative(grid, v2, order=2, v2=v1)

    np.testing.assert_allclose(first, second, atol=1e-7)


def test_speed_field_from_samples_interpolates() -> None:
    theta = 2 * np.pi * np.arange(16) / 16
    samples = 0.3 + np.cos(2 * theta) - 0.5 * np.sin(3 * theta)

    field = NormalSpeedField.from_samples(samples)

    np.testing.assert_allclose(field.evaluate(theta), samples, atol=1e-14)
    np.testing.assert_allclose(
        field.evaluate(theta, 1), -2 * np.sin(2 * theta) - 1.5 * np.cos(3 * theta), atol=1e-13
    )


def test_mixed_normal_derivative_matches_closed_form_on_star(star_grid_curve: ClosedCurve) -> None:
    grid = build_grid(star_grid_curve, 64)
    v1 = NormalSpeedField(sin=(0.0, 0.4, 0.2))
    v2 = NormalSpeedField(cos=(1.0, 0.3))

    mixed = as_complex(normal_shape_derivative(grid, v1, order=2, v2=v2))

    np.testing.assert_allclose(mixed, mixed_normal_closed_form(grid, v1, v2), atol=1e-6)
