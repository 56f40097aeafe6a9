"""Shape derivatives of a scattered field and its shape Taylor expansion.

The expansion of the scattered field on the curve moved by ``sum_i t_i v_i n`` is

    u + sum_i t_i d_i u + 1/2 sum_{i,j} t_i t_j d_ij u,

where every derivative field solves the base exterior problem with the boundary
data of :mod:`shapetaylor.recursion.data`.
"""

from __future__ import annotations

import logging
import time
from itertools import combinations_with_replacement
from typing import TYPE_CHECKING, Literal

import numpy as np

from shapetaylor.geometry import normal_shape_derivative
from shapetaylor.lib.exceptions import DomainError
from shapetaylor.recursion.data import first_order_data, second_order_data
from shapetaylor.recursion.exceptions import SweptRegionError, UnsupportedOrderError
from shapetaylor.recursion.scene import solve_scene
from shapetaylor.solvers import BoundaryKind

if TYPE_CHECKING:
    from collections.abc import Callable, Mapping, Sequence

    import numpy.typing as npt

    from shapetaylor.boundary_calculus import BoundaryJet
    from shapetaylor.geometry import BoundaryGrid, NormalSpeedField
    from shapetaylor.recursion.data import DerivativeProblemData
    from shapetaylor.recursion.scene import Scene
    from shapetaylor.solvers import ScatterSolution

__all__ = ("MAX_ORDER", "TaylorRecord", "shape_derivative_solve", "taylor_evaluate", "taylor_far_field")

LOGGER = logging.getLogger(__name__)

MAX_ORDER = 2

type MultiIndex = tuple[int, ...]


class TaylorRecord:
    """Base field and its shape derivatives up to ``order`` along ``velocities``.

    ``derivatives`` is keyed by sorted multi-indices over the velocity fields:
    ``(i,)`` holds the first derivative along ``v_i`` and ``(i, j)`` with
    ``i <= j`` the mixed second derivative.
    """

    __slots__ = ("_derivatives", "_problems", "base", "order", "scene", "velocities")

    def __init__(
        self,
        *,
        scene: Scene,
        base: ScatterSolution,
        velocities: Sequence[NormalSpeedField],
        order: int,
        derivatives: Mapping[MultiIndex, ScatterSolution],
        problems: Mapping[MultiIndex, DerivativeProblemData],
    ) -> None:
        self.scene = scene
        self.base = base
        self.velocities = tuple(velocities)
        self.order = order
        self._derivatives = dict(derivatives)
        self._problems = dict(problems)

    @property
    def grid(self) -> BoundaryGrid:
        return self.base.grid

    @property
    def indices(self) -> tuple[MultiIndex, ...]:
        return tuple(self._derivatives)

    def derivative(self, *index: int) -> ScatterSolution:
        """Shape derivative along the given velocity indices, in any order."""
        key = tuple(sorted(index))
        if key not in self._derivatives:
            msg = f"No shape derivative with index {index} in this record"
            raise DomainError(msg, field="index")
        return self._derivatives[key]

    def problem(self, *index: int) -> DerivativeProblemData:
        """Boundary data the derivative with this index was solved for."""
        return self._problems[tuple(sorted(index))]

    def __repr__(self) -> str:
        return (
            f"TaylorRecord(order={self.order}, fields={len(self.velocities)}, "
            f"backend={self.base.backend})"
        )


def _interior(solution: ScatterSolution, bc: BoundaryKind) -> BoundaryJet | None:
    return solution.interior_jet() if bc is BoundaryKind.TRANSMISSION else None


def shape_derivative_solve(
    scene: Scene,
    velocities: Sequence[NormalSpeedField],
    order: int = 1,
    *,
    mixed_normal: Literal["closed_form", "finite_difference"] = "closed_form",
) -> TaylorRecord:
    """Solve the base problem and every shape-derivative problem up to ``order``.

    Parameters
    ----------
    scene : Scene
        The base scattering problem.
    velocities : sequence of NormalSpeedField
        Normal speeds ``v_1, ..., v_m`` of the perturbations.
    order : int
        1 or 2.
    mixed_normal : {"closed_form", "finite_difference"}
        Source of the mixed normal derivative in second-order data.

    Raises
    ------
    UnsupportedOrderError
        For ``order > 2``.
    """
    if order > MAX_ORDER:
        raise UnsupportedOrderError(order)
    if order < 1:
        msg = f"Shape derivative order must be at least 1, got {order}"
        raise DomainError(msg, field="order")
    if not velocities:
        msg = "At least one velocity field is required"
        raise DomainError(msg, field="velocities")

    started = time.perf_counter()
    base = solve_scene(scene)
    grid = base.grid
    bc = scene.bc
    total = base.total_jet()
    interior = _interior(base, bc)

    derivatives: dict[MultiIndex, ScatterSolution] = {}
    problems: dict[MultiIndex, DerivativeProblemData] = {}
    for i, v in enumerate(velocities):
        data = first_order_data(bc, total, v, grid, medium=scene.medium, interior_jet=interior)
        problems[(i,)] = data
        derivatives[(i,)] = base.solve_data(data.rhs)

    if order == 2:
        first_jets = {i: derivatives[(i,)].jet() for i in range(len(velocities))}
        first_interior = {i: _interior(derivatives[(i,)], bc) for i in range(len(velocities))}
        for i, j in combinations_with_replacement(range(len(velocities)), 2):
            v1, v2 = velocities[i], velocities[j]
            mixed = None
            if mixed_normal == "finite_difference":
                mixed = normal_shape_derivative(grid, v1, 2, v2)
            inner_first = None
            if interior is not None:
                inner_first = (first_interior[i], first_interior[j])
            data = second_order_data(
                bc,
                total,
                (first_jets[i], first_jets[j]),
                v1,
                v2,
                grid,
                medium=scene.medium,
                interior_jet=interior,
                interior_first_jets=inner_first,
                mixed_normal=mixed,
            )
            problems[(i, j)] = data
            derivatives[(i, j)] = base.solve_data(data.rhs)

    LOGGER.info(
        "Solved %d shape-derivative problems (order %d, %s backend) in %.2fs",
        len(derivatives),
        order,
        base.backend,
        time.perf_counter() - started,
    )
    return TaylorRecord(
        scene=scene,
        base=base,
        velocities=velocities,
        order=order,
        derivatives=derivatives,
        problems=problems,
    )


def _times(record: TaylorRecord, t: float | Sequence[float]) -> tuple[float, ...]:
    times = (float(t),) if isinstance(t, int | float) else tuple(float(x) for x in t)
    if len(times) == 1 and len(record.velocities) > 1:
        times = times * len(record.velocities)
    if len(times) != len(record.velocities):
        msg = f"Expected {len(record.velocities)} perturbation times, got {len(times)}"
        raise DomainError(msg, field="t")
    return times


def _expand(
    record: TaylorRecord,
    times: tuple[float, ...],
    order: int | None,
    value: Callable[[ScatterSolution], npt.NDArray[np.complex128]],
) -> npt.NDArray[np.complex128]:
    order = record.order if order is None else order
    if not 0 <= order <= record.order:
        msg = f"Expansion order must lie in [0, {record.order}], got {order}"
        raise DomainError(msg, field="order")

    result = np.array(value(record.base), dtype=np.complex128)
    if order >= 1:
        for i, t in enumerate(times):
            if t != 0.0:
                result += t * value(record.derivative(i))
    if order >= 2:
        for i, j in combinations_with_replacement(range(len(times)), 2):
            # the symmetric double sum counts off-diagonal terms twice
            weight = 0.5 * times[i] * times[j] if i == j else times[i] * times[j]
            if weight != 0.0:
                result += weight * value(record.derivative(i, j))
    return result


def _check_swept_region(record: TaylorRecord, points: npt.NDArray[np.float64], times: tuple[float, ...]) -> None:
    grid = record.grid
    sweep = sum(
        abs(t) * float(np.max(np.abs(v.evaluate(grid.theta))))
        for t, v in zip(times, record.velocities, strict=True)
    )
    targets = points[:, 0] + 1j * points[:, 1]
    distance = np.min(np.abs(targets[:, None] - grid.z[None, :]), axis=1)
    closest = float(np.min(distance))
    if closest <= sweep + grid.spacing:
        raise SweptRegionError(closest, sweep)


def taylor_evaluate(
    record: TaylorRecord,
    points: npt.ArrayLike,
    t: float | Sequence[float],
    order: int | None = None,
) -> npt.NDArray[np.complex128]:
    """Shape Taylor expansion of the scattered field at exterior ``points``.

    ``t`` is a single time for one velocity field (or all fields moved together)
    or one time per field. ``order`` truncates the expansion and defaults to the
    record's order.

    Raises
    ------
    SweptRegionError
        If a point lies within ``sum |t_i| max |v_i|`` (plus one grid spacing) of
        the base curve.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    times = _times(record, t)
    _check_swept_region(record, pts, times)
    return _expand(record, times, order, lambda solution: solution.evaluate(pts))


def taylor_far_field(
    record: TaylorRecord,
    angles: npt.ArrayLike,
    t: float | Sequence[float],
    order: int | None = None,
) -> npt.NDArray[np.complex128]:
    """Shape Taylor expansion of the far-field pattern."""
    times = _times(record, t)
    return _expand(record, times, order, lambda solution: solution.far_field(angles))
