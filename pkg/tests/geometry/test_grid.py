from __future__ import annotations

import numpy as np
import pytest

from shapetaylor.geometry import (
    ClosedCurve,
    DegenerateCurveError,
    StarCurve,
    build_grid,
    circle,
)
from shapetaylor.lib.exceptions import DomainError
from shapetaylor.utils.fourier import trig_derivative


def test_unit_circle_curvature_and_normals() -> None:
    grid = build_grid(circle(1.0), 64)

    np.testing.assert_allclose(grid.curvature, 1.0, atol=1e-12)
    expected = np.stack([np.cos(grid.theta), np.sin(grid.theta)], axis=-1)
    np.testing.assert_allclose(grid.normals, expected, atol=1e-13)


def test_ellipse_curvature_at_vertex() -> None:
    ellipse = ClosedCurve.from_fourier((0.0, 2.0), (), (), (0.0, 1.0))
    grid = build_grid(ellipse, 256)

    assert grid.curvature[0] == pytest.approx(2.0, abs=1e-10)


@pytest.mark.parametrize("n_nodes", [64, 128, 256])
def test_frame_is_orthonormal(star_grid_curve: ClosedCurve, n_nodes: int) -> None:
    grid = build_grid(star_grid_curve, n_nodes)

    dot = np.sum(grid.tangents * grid.normals, axis=-1)
    np.testing.assert_allclose(dot, 0.0, atol=1e-13)
    np.testing.assert_allclose(np.linalg.norm(grid.normals, axis=-1), 1.0, atol=1e-13)


def test_normal_derivative_along_arclength(star_grid_curve: ClosedCurve) -> None:
    grid = build_grid(star_grid_curve, 256)

    dn_ds = trig_derivative(grid.normal, 1) / grid.speed
    np.testing.assert_allclose(dn_ds, grid.curvature * grid.tangent, atol=1e-10)


def test_turning_number(star_grid_curve: ClosedCurve) -> None:
    grid = build_grid(star_grid_curve, 256)

    assert np.sum(grid.curvature * grid.weights) == pytest.approx(2 * np.pi, abs=1e-10)


def test_circle_radius_gives_curvature() -> None:
    grid = build_grid(circle(2.5), 32)

    np.testing.assert_allclose(grid.curvature, 0.4, atol=1e-12)
    assert grid.length == pytest.approx(5 * np.pi, rel=1e-13)


def test_degenerate_curve_rejected() -> None:
    with pytest.raises(DegenerateCurveError):
        build_grid(ClosedCurve.from_samples(np.zeros(32)), 32)


@pytest.mark.parametrize("n_nodes", [8, 15, 63])
def test_node_count_validated(n_nodes: int) -> None:
    with pytest.raises(DomainError):
        build_grid(circle(1.0), n_nodes)


def test_star_curve_radius_must_stay_positive() -> None:
    with pytest.raises(DomainError):
        StarCurve(a0=1.0, cos=(0.0, 1.5)).to_curve()


def test_curve_leaves_caller_samples_writeable() -> None:
    samples = np.exp(2j * np.pi * np.arange(32) / 32)

    curve = ClosedCurve.from_samples(samples)
    samples[0] = 5.0

    assert samples.flags.writeable
    assert curve.samples[0] == pytest.approx(1.0)
    assert not curve.samples.flags.writeable
