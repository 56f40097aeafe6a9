from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING

import numpy as np

from shapetaylor.config.app import APP_CONFIG
from shapetaylor.lib.exceptions import DomainError
from shapetaylor.lib.schemas import Struct
from shapetaylor.recursion.scene import moved_scene, solve_scene
from shapetaylor.recursion.taylor import taylor_evaluate

if TYPE_CHECKING:
    from collections.abc import Sequence

    import numpy.typing as npt

    from shapetaylor.geometry import NormalSpeedField
    from shapetaylor.harness.fitting import OrderFit
    from shapetaylor.recursion.scene import Scene
    from shapetaylor.recursion.taylor import TaylorRecord

__all__ = (
    "GridRemainderStudy",
    "RemainderStudy",
    "combined_field",
    "grid_remainder_study",
    "perturbed_scene",
    "remainder_study",
)

LOGGER = logging.getLogger(__name__)


class RemainderStudy(Struct):
    """Taylor remainders against direct solves, per expansion order."""

    ts: list[float]
    weights: list[float]
    orders: list[int]
    errors: dict[int, list[float]]
    fits: dict[int, OrderFit | None]
    reference: str
    seconds: float

    def slope(self, order: int) -> float | None:
        """Fitted order, reported only when the fit is reliable."""
        fit = self.fits.get(order)
        return fit.slope if fit is not None and fit.reliable else None


class GridRemainderStudy(Struct):
    """Remainders of one expansion order over a grid of times ``(t_1, ..., t_m)``.

    The fit runs through the upper envelope: the largest remainder among the
    grid points sharing the same ``max_i |t_i|``.
    """

    times: list[tuple[float, ...]]
    errors: list[float]
    order: int
    sizes: list[float]
    envelope: list[float]
    fit: OrderFit | None
    seconds: float


def combined_field(record: TaylorRecord, weights: Sequence[float]) -> NormalSpeedField:
    """``sum_i w_i v_i``, the speed of the joint perturbation."""
    velocities = record.velocities
    field = velocities[0].scaled(weights[0])
    for v, w in zip(velocities[1:], weights[1:], strict=True):
        field = field + v.scaled(w)
    return field


def perturbed_scene(record: TaylorRecord, v: NormalSpeedField, t: float) -> Scene:
    """The base scene with its curve moved to ``x + t v n``, sampled on the record grid."""
    return moved_scene(record.scene, v, t, grid=record.grid)


def _errors_at(
    record: TaylorRecord,
    v: NormalSpeedField,
    t: float,
    weights: Sequence[float],
    points: npt.NDArray[np.float64],
    orders: Sequence[int],
) -> tuple[str, list[float]]:
    started = time.perf_counter()
    scene = perturbed_scene(record, v, t)
    exact = solve_scene(scene)
    reference = exact.evaluate(points)
    times = tuple(t * w for w in weights)
    errors = [
        float(np.max(np.abs(reference - taylor_evaluate(record, points, times, order))))
        for order in orders
    ]
    LOGGER.info(
        "t=%.3e: direct %s solve and %d expansions in %.2fs",
        t,
        exact.backend,
        len(orders),
        time.perf_counter() - started,
    )
    return exact.backend, errors


def remainder_study(
    record: TaylorRecord,
    ts: Sequence[float],
    points: npt.ArrayLike,
    *,
    orders: Sequence[int] | None = None,
    weights: Sequence[float] | None = None,
    threads: int | None = None,
) -> RemainderStudy:
    """Compare the shape Taylor expansion with direct solves on perturbed curves.

    For every ``t`` the curve is moved by ``t sum_i w_i v_i n``, the scattered
    field is solved directly and compared with the expansion of each order at
    ``points``. The slopes of ``log err`` against ``log t`` estimate the
    remainder orders, which should be one more than the expansion order.

    Parameters
    ----------
    record : TaylorRecord
        Base field and shape derivatives.
    ts : sequence of float
        Perturbation sizes, typically a geometric sequence.
    points : array_like
        ``(m, 2)`` observation points outside every perturbed curve.
    orders : sequence of int, optional
        Expansion orders to test; defaults to ``0, ..., record.order``.
    weights : sequence of float, optional
        Direction ``(w_1, ..., w_m)`` in the space of times; defaults to all ones.
    threads : int, optional
        Worker threads for the independent direct solves; defaults to
        ``SHAPETAYL_THREADS``.
    """
    from shapetaylor.harness.exceptions import InsufficientDataError
    from shapetaylor.harness.fitting import fit_order

    orders = list(range(record.order + 1)) if orders is None else list(orders)
    weights = [1.0] * len(record.velocities) if weights is None else [float(w) for w in weights]
    if len(weights) != len(record.velocities):
        msg = f"Expected {len(record.velocities)} weights, got {len(weights)}"
        raise DomainError(msg, field="weights")
    if any(not 0 <= order <= record.order for order in orders):
        msg = f"Expansion orders must lie in [0, {record.order}], got {orders}"
        raise DomainError(msg, field="orders")

    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    v = combined_field(record, weights)
    t_values = [float(t) for t in ts]
    workers = max(1, min(threads or APP_CONFIG.threads, len(t_values)))

    started = time.perf_counter()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(
            pool.map(lambda t: _errors_at(record, v, t, weights, pts, orders), t_values)
        )

    errors = {order: [result[1][i] for result in results] for i, order in enumerate(orders)}
    fits: dict[int, OrderFit | None] = {}
    for order, values in errors.items():
        fit: OrderFit | None = None
        try:
            fit = fit_order(t_values, values)
        except InsufficientDataError:
            LOGGER.warning("Order %d remainders sit on the rounding floor; no slope fitted", order)
        else:
            LOGGER.info("Order %d remainder slope %.3f", order, fit.slope)
        fits[order] = fit

    return RemainderStudy(
        ts=t_values,
        weights=weights,
        orders=orders,
        errors=errors,
        fits=fits,
        reference=",".join(sorted({result[0] for result in results})),
        seconds=time.perf_counter() - started,
    )


def _size(entry: Sequence[float]) -> float:
    return max(abs(t) for t in entry)


def grid_remainder_study(
    record: TaylorRecord,
    times: Sequence[Sequence[float]],
    points: npt.ArrayLike,
    *,
    order: int | None = None,
    threads: int | None = None,
) -> GridRemainderStudy:
    """Remainder of the multivariable expansion at every ``(t_1, ..., t_m)`` of a grid.

    Each grid point moves the curve by ``sum_i t_i v_i n`` and is compared with a
    direct solve. The remainder order is fitted against ``max_i |t_i|``.

    Raises
    ------
    DomainError
        If a grid point has the wrong number of times or is the origin.
    """
    from shapetaylor.harness.exceptions import InsufficientDataError
    from shapetaylor.harness.fitting import fit_order

    order = record.order if order is None else order
    if not 0 <= order <= record.order:
        msg = f"Expansion order must lie in [0, {record.order}], got {order}"
        raise DomainError(msg, field="order")
    grid_times = [tuple(float(t) for t in entry) for entry in times]
    for entry in grid_times:
        if len(entry) != len(record.velocities):
            msg = f"Expected {len(record.velocities)} times per grid point, got {len(entry)}"
            raise DomainError(msg, field="times")
        if _size(entry) == 0.0:
            msg = "Grid points must move the curve"
            raise DomainError(msg, field="times")

    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    workers = max(1, min(threads or APP_CONFIG.threads, len(grid_times)))

    def error_at(entry: tuple[float, ...]) -> float:
        size = _size(entry)
        weights = [t / size for t in entry]
        v = combined_field(record, weights)
        return _errors_at(record, v, size, weights, pts, [order])[1][0]

    started = time.perf_counter()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        errors = list(pool.map(error_at, grid_times))

    sizes = sorted({_size(t) for t in grid_times})
    envelope = [
        max(e for t, e in zip(grid_times, errors, strict=True) if _size(t) == size)
        for size in sizes
    ]
    fit: OrderFit | None = None
    try:
        fit = fit_order(sizes, envelope)
    except InsufficientDataError:
        LOGGER.warning("Order %d grid remainders sit on the rounding floor; no slope fitted", order)
    else:
        LOGGER.info("Order %d grid remainder slope %.3f", order, fit.slope)

    return GridRemainderStudy(
        times=grid_times,
        errors=errors,
        order=order,
        sizes=sizes,
        envelope=envelope,
        fit=fit,
        seconds=time.perf_counter() - started,
    )
