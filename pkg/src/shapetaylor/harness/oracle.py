"""Finite-difference shape derivatives from direct solves on moved curves.

First derivatives use the central quotient ``(F(h) - F(-h)) / 2h`` and mixed
second derivatives the four-point quotient

    (F(h, h) - F(h, -h) - F(-h, h) + F(-h, -h)) / 4h^2,

where ``F(t_1, t_2)`` is the scattered field after moving the curve by
``t_1 v_1 n + t_2 v_2 n``. Both errors are even in ``h``, so the Richardson table
over ``h, h/2, h/4, ...`` eliminates one power of ``h^2`` per column.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING

import numpy as np

from shapetaylor.config.app import APP_CONFIG
from shapetaylor.harness.exceptions import OracleInconclusiveError
from shapetaylor.lib.exceptions import DomainError
from shapetaylor.lib.schemas import Struct
from shapetaylor.recursion import moved_scene, solve_scene

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    import numpy.typing as npt

    from shapetaylor.geometry import NormalSpeedField
    from shapetaylor.recursion import Scene
    from shapetaylor.solvers import ScatterSolution

__all__ = ("OracleEstimate", "RichardsonTable", "fd_oracle", "richardson")

LOGGER = logging.getLogger(__name__)

DEFAULT_RTOL = 1e-5
ABSOLUTE_FLOOR = 1e-10


class RichardsonTable:
    """Extrapolation table of an even-order difference quotient.

    ``rows[i][j]`` combines the quotients at steps ``h / 2**(i-j) ... h / 2**i``;
    the last diagonal entry is the estimate and the difference of the last two
    diagonal entries its error bar.
    """

    __slots__ = ("rows", "steps")

    def __init__(
        self, steps: Sequence[float], quotients: Sequence[npt.NDArray[np.complex128]]
    ) -> None:
        self.steps = tuple(steps)
        rows: list[list[npt.NDArray[np.complex128]]] = []
        for i, quotient in enumerate(quotients):
            row = [np.asarray(quotient, dtype=np.complex128)]
            for j in range(1, i + 1):
                gain = (row[j - 1] - rows[i - 1][j - 1]) / (4.0**j - 1.0)
                row.append(row[j - 1] + gain)
            rows.append(row)
        self.rows = rows

    @property
    def levels(self) -> int:
        return len(self.rows) - 1

    @property
    def estimate(self) -> npt.NDArray[np.complex128]:
        return self.rows[-1][-1]

    @property
    def spread(self) -> float:
        if self.levels == 0:
            return float("inf")
        return float(np.max(np.abs(self.rows[-1][-1] - self.rows[-2][-1])))

    def diagonal_spreads(self) -> list[float]:
        return [
            float(np.max(np.abs(self.rows[i][i] - self.rows[i - 1][i - 1])))
            for i in range(1, len(self.rows))
        ]


def richardson(
    quotient: Callable[[float], npt.ArrayLike],
    step: float,
    levels: int,
    *,
    rtol: float = DEFAULT_RTOL,
) -> RichardsonTable:
    """Build the Richardson table of ``quotient`` over ``step / 2**i``, ``i <= levels``.

    Raises
    ------
    OracleInconclusiveError
        If the last two diagonal entries differ by more than
        ``rtol * max(1, max|estimate|)`` (with a floor of ``1e-10``).
    """
    if levels < 1:
        msg = f"Richardson extrapolation needs at least one level, got {levels}"
        raise DomainError(msg, field="richardson_levels")
    steps = [step / 2**i for i in range(levels + 1)]
    quotients = [np.asarray(quotient(h), dtype=np.complex128) for h in steps]
    table = RichardsonTable(steps, quotients)
    _check(table, rtol)
    return table


def _check(table: RichardsonTable, rtol: float) -> None:
    scale = max(1.0, float(np.max(np.abs(table.estimate), initial=0.0)))
    tolerance = max(rtol * scale, ABSOLUTE_FLOOR)
    if not table.spread <= tolerance:
        LOGGER.warning("Richardson table did not settle: %s", table.diagonal_spreads())
        raise OracleInconclusiveError(table.spread, tolerance)


class OracleEstimate(Struct):
    """Finite-difference derivative at observation points, with its error bar."""

    quantity: str
    order: int
    t_step: float
    levels: int
    real: list[float]
    imag: list[float]
    error_bar: float
    solves: int

    @property
    def values(self) -> npt.NDArray[np.complex128]:
        return np.asarray(self.real) + 1j * np.asarray(self.imag)


def _observer(
    points: npt.ArrayLike | None, angles: npt.ArrayLike | None
) -> tuple[str, Callable[[ScatterSolution], npt.NDArray[np.complex128]]]:
    if (points is None) == (angles is None):
        msg = "Pass exactly one of points or angles"
        raise DomainError(msg, field="points")
    if points is not None:
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        return "field", lambda solution: solution.evaluate(pts)
    theta = np.asarray(angles, dtype=np.float64)
    return "far_field", lambda solution: solution.far_field(theta)


def fd_oracle(  # noqa: PLR0913
    scene: Scene,
    v: NormalSpeedField,
    t_step: float,
    richardson_levels: int = 2,
    *,
    second: NormalSpeedField | None = None,
    points: npt.ArrayLike | None = None,
    angles: npt.ArrayLike | None = None,
    rtol: float = DEFAULT_RTOL,
    threads: int | None = None,
) -> OracleEstimate:
    """Estimate a shape derivative of the scattered field by finite differences.

    Parameters
    ----------
    scene : Scene
        Base scattering problem.
    v : NormalSpeedField
        First velocity.
    t_step : float
        Largest step; must keep every moved curve within the reach guard.
    richardson_levels : int
        Number of halvings of ``t_step``.
    second : NormalSpeedField, optional
        Second velocity; when given, the mixed second derivative is estimated.
    points, angles : array_like, optional
        Exterior points (field values) or observation angles (far field); exactly
        one must be given.
    rtol : float
        Relative settling tolerance of the Richardson table.
    threads : int, optional
        Worker threads for the direct solves; defaults to ``SHAPETAYL_THREADS``.

    Raises
    ------
    OracleInconclusiveError
        If the Richardson table does not settle.
    PerturbationTooLargeError
        If a moved curve leaves the reach guard.
    """
    quantity, observe = _observer(points, angles)
    steps = [t_step / 2**i for i in range(richardson_levels + 1)]
    signs = ((1.0, 0.0), (-1.0, 0.0))
    if second is not None:
        signs = ((1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0))
    offsets = [(a * h, b * h) for h in steps for a, b in signs]

    def sample(offset: tuple[float, float]) -> npt.NDArray[np.complex128]:
        t1, t2 = offset
        field = v.scaled(t1) if second is None else v.scaled(t1) + second.scaled(t2)
        return observe(solve_scene(moved_scene(scene, field, 1.0)))

    workers = max(1, min(threads or APP_CONFIG.threads, len(offsets)))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        samples = dict(zip(offsets, pool.map(sample, offsets), strict=True))

    def first(h: float) -> npt.NDArray[np.complex128]:
        return (samples[h, 0.0] - samples[-h, 0.0]) / (2.0 * h)

    def mixed(h: float) -> npt.NDArray[np.complex128]:
        return (samples[h, h] - samples[h, -h] - samples[-h, h] + samples[-h, -h]) / (
            4.0 * h * h
        )

    quotient = first if second is None else mixed
    table = richardson(quotient, t_step, richardson_levels, rtol=rtol)
    LOGGER.info(
        "FD oracle (%s, order %d) from %d solves: error bar %.3e",
        quantity,
        1 if second is None else 2,
        len(offsets),
        table.spread,
    )
    estimate = table.estimate
    return OracleEstimate(
        quantity=quantity,
        order=1 if second is None else 2,
        t_step=t_step,
        levels=richardson_levels,
        real=estimate.real.tolist(),
        imag=estimate.imag.tolist(),
        error_bar=table.spread,
        solves=len(offsets),
    )
