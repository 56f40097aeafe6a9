from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np

from shapetaylor.geometry.curves import ClosedCurve
from shapetaylor.geometry.exceptions import (
    NormalDerivativeAccuracyError,
    PerturbationTooLargeError,
)
from shapetaylor.geometry.grid import as_pairs, build_grid
from shapetaylor.lib.exceptions import DomainError

if TYPE_CHECKING:
    from collections.abc import Sequence

    import numpy.typing as npt

    from shapetaylor.geometry.curves import NormalSpeedField
    from shapetaylor.geometry.grid import BoundaryGrid

__all__ = (
    "REACH_FACTOR",
    "compose_offsets",
    "normal_shape_derivative",
    "offset_curve",
    "reach_limit",
)

LOGGER = logging.getLogger(__name__)

REACH_FACTOR = 0.8
RICHARDSON_TOLERANCE = 1e-5
_NEWTON_STEPS = 12


def reach_limit(grid: BoundaryGrid, v: NormalSpeedField) -> float:
    """Largest admissible ``|t|`` for an offset of ``grid`` along ``v``."""
    max_speed = float(np.max(np.abs(v.evaluate(grid.theta))))
    max_curvature = float(np.max(np.abs(grid.curvature)))
    if max_speed == 0.0 or max_curvature == 0.0:
        return np.inf
    return REACH_FACTOR / (max_curvature * max_speed)


def offset_curve(grid: BoundaryGrid, v: NormalSpeedField, t: float) -> ClosedCurve:
    """The curve ``x(theta) + t v(theta) n(theta)``, the time-``t`` flow of ``v n``.

    Raises
    ------
    PerturbationTooLargeError
        If ``|t| max|v|`` is not below ``0.8 / max|kappa|``.
    """
    speed = v.evaluate(grid.theta)
    if t != 0.0 and abs(t) >= reach_limit(grid, v):
        reach = REACH_FACTOR / float(np.max(np.abs(grid.curvature)))
        raise PerturbationTooLargeError(t, float(np.max(np.abs(speed))), reach)
    return ClosedCurve.from_samples(grid.z + t * speed * grid.normal)


def compose_offsets(
    grid: BoundaryGrid, fields: Sequence[NormalSpeedField], times: Sequence[float]
) -> ClosedCurve:
    """Apply the offsets one after another, transporting each field by node index."""
    current = grid
    curve = grid.curve
    for v, t in zip(fields, times, strict=True):
        curve = offset_curve(current, v, t)
        current = build_grid(curve, grid.n_nodes)
    return curve


def _crossing_normals(grid: BoundaryGrid, curve: ClosedCurve) -> npt.NDArray[np.complex128]:
    # Normal of ``curve`` where it crosses the normal line through each node of ``grid``.
    theta = grid.theta.copy()
    for _ in range(_NEWTON_STEPS):
        gap = curve.evaluate(theta) - grid.z
        residual = np.real(gap * np.conj(grid.tangent))
        slope = np.real(curve.evaluate(theta, 1) * np.conj(grid.tangent))
        step = residual / slope
        theta -= step
        if np.max(np.abs(step)) < 1e-15:
            break
    derivative = curve.evaluate(theta, 1)
    return -1j * derivative / np.abs(derivative)


def _mixed_difference(
    grid: BoundaryGrid, v1: NormalSpeedField, v2: NormalSpeedField, h: float
) -> npt.NDArray[np.complex128]:
    total = np.zeros(grid.n_nodes, dtype=np.complex128)
    for s1, s2, sign in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)):
        curve = compose_offsets(grid, (v1, v2), (s1 * h, s2 * h))
        total += sign * _crossing_normals(grid, curve)
    return total / (4.0 * h * h)


def _mixed_normal_derivative(
    grid: BoundaryGrid, v1: NormalSpeedField, v2: NormalSpeedField, levels: int = 4
) -> npt.NDArray[np.complex128]:
    h0 = min(5e-3, 0.1 * reach_limit(grid, v1), 0.1 * reach_limit(grid, v2))
    table: list[list[npt.NDArray[np.complex128]]] = []
    for i in range(levels):
        row = [_mixed_difference(grid, v1, v2, h0 / 2**i)]
        for j in range(1, i + 1):
            row.append(row[j - 1] + (row[j - 1] - table[i - 1][j - 1]) / (4**j - 1))
        table.append(row)

    residual = float(np.max(np.abs(table[-1][-1] - table[-2][-1])))
    LOGGER.debug("Mixed normal derivative: h0=%.3e, Richardson residual %.3e", h0, residual)
    if residual > RICHARDSON_TOLERANCE:
        raise NormalDerivativeAccuracyError(residual)
    return table[-1][-1]


def normal_shape_derivative(
    grid: BoundaryGrid,
    v1: NormalSpeedField,
    order: int = 1,
    v2: NormalSpeedField | None = None,
) -> npt.NDArray[np.float64]:
    """Shape derivative of the outward normal as an ``(n, 2)`` vector field.

    Order 1 is the closed form ``-v_s tau``. Order 2 is the mixed derivative of the
    normal of the composed flow, taken by central differences along the normal line
    through each node and extrapolated with a Richardson table.

    Raises
    ------
    NormalDerivativeAccuracyError
        If the order-2 Richardson table does not settle below ``1e-5``.
    """
    if order == 1:
        v_s = v1.evaluate(grid.theta, 1) / grid.speed
        return as_pairs(-v_s * grid.tangent)
    if order != 2:
        msg = f"normal_shape_derivative supports order 1 or 2, got {order}"
        raise DomainError(msg)
    second = v1 if v2 is None else v2
    if v1.is_zero or second.is_zero:
        return np.zeros((grid.n_nodes, 2))
    return as_pairs(_mixed_normal_derivative(grid, v1, second))
