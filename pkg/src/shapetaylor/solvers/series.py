"""Separation-of-variables solutions on a circle of radius ``a``.

The scattered field is ``sum_m c_m H_m(k_+ r) exp(i m theta)`` and, for transmission,
the interior field is ``sum_m b_m J_m(k_- r) exp(i m theta)``. Every boundary
condition reduces to a 1x1 (or 2x2) system per mode, whose entries are smooth in
``a``; radius derivatives of the coefficients follow by differentiating the
systems with the Leibniz rule.
"""

from __future__ import annotations

import logging
import math
import warnings
from typing import TYPE_CHECKING, Literal

import numpy as np

from shapetaylor.boundary_calculus import BoundaryScalar, build_jet
from shapetaylor.geometry import build_grid, circle
from shapetaylor.lib.exceptions import DomainError, UnsupportedError
from shapetaylor.solvers.base import ScatterSolution, incident_data
from shapetaylor.solvers.exceptions import ModeTruncationWarning
from shapetaylor.solvers.models import BoundaryKind, Medium
from shapetaylor.specfun import bessel_derivative, hankel1_derivative

if TYPE_CHECKING:
    import numpy.typing as npt

    from shapetaylor.boundary_calculus import BoundaryJet
    from shapetaylor.geometry import BoundaryGrid
    from shapetaylor.solvers.base import BoundaryData
    from shapetaylor.solvers.incident import IncidentField

__all__ = ("SeriesSolution", "default_mode_count", "series_solve", "series_solve_data")

LOGGER = logging.getLogger(__name__)

MAX_DERIVATIVE = 3


def default_mode_count(radius: float, *wavenumbers: float) -> int:
    """Mode cutoff ``|m| <= ceil(k a) + 40`` for the largest wavenumber."""
    return math.ceil(max(wavenumbers) * radius) + 40


def _scaled(kind: Literal["J", "H"], modes: npt.NDArray[np.int64], k: float, a: float, q: int) -> npt.NDArray[np.complex128]:
    # q-th radius derivative of f_m(k a)
    if kind == "H":
        return k**q * hankel1_derivative(modes, k * a, q)
    return k**q * bessel_derivative("J", modes, k * a, q).astype(np.complex128)


def _operator(
    bc: BoundaryKind,
    modes: npt.NDArray[np.int64],
    a: float,
    k: float,
    medium: Medium,
    q: int,
) -> npt.NDArray[np.complex128]:
    """q-th radius derivative of the mode-wise system matrices, shape ``(M, s, s)``."""
    k_out = medium.exterior_wavenumber(k)
    h_q = _scaled("H", modes, k_out, a, q)
    h_q1 = _scaled("H", modes, k_out, a, q + 1)
    match bc:
        case BoundaryKind.SOFT:
            blocks = h_q[:, None, None]
        case BoundaryKind.HARD:
            blocks = h_q1[:, None, None]
        case BoundaryKind.IMPEDANCE:
            blocks = (medium.alpha * h_q1 + 1j * medium.impedance * h_q)[:, None, None]
        case BoundaryKind.TRANSMISSION:
            k_in = medium.interior_wavenumber(k)
            j_q = _scaled("J", modes, k_in, a, q)
            j_q1 = _scaled("J", modes, k_in, a, q + 1)
            blocks = np.empty((modes.size, 2, 2), dtype=np.complex128)
            blocks[:, 0, 0] = h_q
            blocks[:, 0, 1] = -j_q
            blocks[:, 1, 0] = medium.alpha * h_q1
            blocks[:, 1, 1] = -medium.alpha_inner * j_q1
    return blocks


def _incident_rhs(
    bc: BoundaryKind,
    modes: npt.NDArray[np.int64],
    a: float,
    k: float,
    medium: Medium,
    incident: IncidentField,
    q: int,
) -> npt.NDArray[np.complex128]:
    """q-th radius derivative of the plane-wave boundary data per mode, shape ``(M, s)``."""
    k_out = medium.exterior_wavenumber(k)
    factors = incident.plane_wave_modes(modes)
    phi_q = factors * _scaled("J", modes, k_out, a, q)
    phi_q1 = factors * _scaled("J", modes, k_out, a, q + 1)
    match bc:
        case BoundaryKind.SOFT:
            return -phi_q[:, None]
        case BoundaryKind.HARD:
            return -phi_q1[:, None]
        case BoundaryKind.IMPEDANCE:
            return -(medium.alpha * phi_q1 + 1j * medium.impedance * phi_q)[:, None]
        case BoundaryKind.TRANSMISSION:
            return np.stack([-phi_q, -medium.alpha * phi_q1], axis=-1)


def _weighted(
    coefficients: npt.NDArray[np.complex128], values: npt.NDArray[np.complex128]
) -> npt.NDArray[np.complex128]:
    # Dropped modes carry a zero coefficient against a non-finite Hankel value.
    with np.errstate(invalid="ignore"):
        return np.where(coefficients != 0, coefficients * values, 0.0)


def _solve_modes(
    matrices: npt.NDArray[np.complex128], rhs: npt.NDArray[np.complex128]
) -> tuple[npt.NDArray[np.complex128], npt.NDArray[np.bool_]]:
    finite = np.all(np.isfinite(matrices), axis=(1, 2)) & np.all(np.isfinite(rhs), axis=1)
    solution = np.zeros_like(rhs)
    if np.any(finite):
        solution[finite] = np.linalg.solve(matrices[finite], rhs[finite][..., None])[..., 0]
    return solution, ~finite


class SeriesSolution(ScatterSolution):
    """Mode-sum solution on a circle, with closed-form radius derivatives."""

    backend = "series"

    __slots__ = (
        "bc",
        "coefficients",
        "data",
        "grid",
        "incident",
        "interior",
        "k",
        "medium",
        "modes",
        "radius",
        "truncation_error",
    )

    def __init__(
        self,
        *,
        radius: float,
        bc: BoundaryKind,
        k: float,
        medium: Medium,
        grid: BoundaryGrid,
        modes: npt.NDArray[np.int64],
        coefficients: npt.NDArray[np.complex128],
        interior: npt.NDArray[np.complex128] | None = None,
        incident: IncidentField | None = None,
        data: BoundaryData | None = None,
        truncation_error: float = 0.0,
    ) -> None:
        self.radius = radius
        self.bc = bc
        self.k = k
        self.medium = medium
        self.grid = grid
        self.modes = modes
        self.coefficients = coefficients
        self.interior = interior
        self.incident = incident
        self.data = data
        self.truncation_error = truncation_error

    @property
    def n_modes(self) -> int:
        return int(np.max(np.abs(self.modes)))

    def _on_grid(self, values: npt.NDArray[np.complex128]) -> BoundaryScalar:
        phases = np.exp(1j * np.multiply.outer(self.grid.theta, self.modes))
        return BoundaryScalar(self.grid, phases @ values)

    def trace(self) -> BoundaryScalar:
        k_out = self.exterior_wavenumber
        return self._on_grid(_weighted(self.coefficients, _scaled("H", self.modes, k_out, self.radius, 0)))

    def normal_trace(self) -> BoundaryScalar:
        k_out = self.exterior_wavenumber
        return self._on_grid(_weighted(self.coefficients, _scaled("H", self.modes, k_out, self.radius, 1)))

    def interior_jet(self) -> BoundaryJet:
        if self.interior is None:
            return super().interior_jet()
        k_in = self.medium.interior_wavenumber(self.k)
        u = self._on_grid(self.interior * _scaled("J", self.modes, k_in, self.radius, 0))
        u_n = self._on_grid(self.interior * _scaled("J", self.modes, k_in, self.radius, 1))
        return build_jet((u, u_n), self.grid, self.k, self.medium.alpha_inner)

    def evaluate(
        self, points: npt.ArrayLike, *, gradient: bool = False
    ) -> npt.NDArray[np.complex128]:
        x = np.atleast_2d(np.asarray(points, dtype=np.float64))
        r = np.hypot(x[:, 0], x[:, 1])
        if np.any(r <= self.radius):
            msg = f"Series evaluation needs points outside the circle of radius {self.radius}"
            raise DomainError(msg, field="points")
        theta = np.arctan2(x[:, 1], x[:, 0])
        k_out = self.exterior_wavenumber
        phases = np.exp(1j * np.multiply.outer(theta, self.modes))
        kr = np.multiply.outer(k_out * r, np.ones(self.modes.size))
        orders = np.broadcast_to(self.modes, kr.shape)
        hankel = hankel1_derivative(orders, kr, 0)
        if not gradient:
            return np.sum(phases * _weighted(self.coefficients, hankel), axis=-1)
        d_r = np.sum(
            phases * k_out * _weighted(self.coefficients, hankel1_derivative(orders, kr, 1)), axis=-1
        )
        d_theta = np.sum(phases * 1j * self.modes * _weighted(self.coefficients, hankel), axis=-1) / r
        e_r = x / r[:, None]
        e_theta = np.stack([-e_r[:, 1], e_r[:, 0]], axis=-1)
        return d_r[:, None] * e_r + d_theta[:, None] * e_theta

    def far_field(self, angles: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        theta = np.asarray(angles, dtype=np.float64)
        k_out = self.exterior_wavenumber
        weights = self.coefficients * (-1j) ** self.modes
        pattern = np.exp(1j * np.multiply.outer(theta, self.modes)) @ weights
        return math.sqrt(2.0 / (math.pi * k_out)) * np.exp(-0.25j * math.pi) * pattern

    def solve_data(self, data: BoundaryData) -> SeriesSolution:
        return series_solve_data(self.radius, self.bc, self.k, data, medium=self.medium)

    def radius_derivative(self, order: int) -> SeriesSolution:
        """``order``-th derivative of the scattered field in the radius at fixed points.

        This is the Eulerian shape derivative of order ``order`` along the constant
        unit normal speed.
        """
        if not 1 <= order <= MAX_DERIVATIVE:
            msg = f"Radius derivatives are available up to order {MAX_DERIVATIVE}, got {order}"
            raise DomainError(msg, field="order")
        if self.incident is None:
            msg = "Radius derivatives need the incident plane wave"
            raise UnsupportedError(msg)

        a = self.radius
        operators = [_operator(self.bc, self.modes, a, self.k, self.medium, q) for q in range(order + 1)]
        stacked = self._stacked()
        history = [stacked]
        for p in range(1, order + 1):
            rhs = _incident_rhs(self.bc, self.modes, a, self.k, self.medium, self.incident, p)
            for q in range(1, p + 1):
                rhs = rhs - math.comb(p, q) * np.einsum("mij,mj->mi", operators[q], history[p - q])
            step, _ = _solve_modes(operators[0], rhs)
            history.append(step)

        result = history[order]
        return SeriesSolution(
            radius=a,
            bc=self.bc,
            k=self.k,
            medium=self.medium,
            grid=self.grid,
            modes=self.modes,
            coefficients=result[:, 0],
            interior=result[:, 1] if result.shape[1] == 2 else None,
        )

    def _stacked(self) -> npt.NDArray[np.complex128]:
        if self.interior is None:
            return self.coefficients[:, None]
        return np.stack([self.coefficients, self.interior], axis=-1)


def _assemble(
    *,
    radius: float,
    bc: BoundaryKind,
    k: float,
    medium: Medium,
    modes: npt.NDArray[np.int64],
    solution: npt.NDArray[np.complex128],
    dropped: npt.NDArray[np.bool_],
    grid: BoundaryGrid,
    incident: IncidentField | None,
    data: BoundaryData | None,
) -> SeriesSolution:
    k_out = medium.exterior_wavenumber(k)
    edge = np.abs(modes) == np.max(np.abs(modes))
    with np.errstate(invalid="ignore", over="ignore"):
        tail = np.abs(solution[edge, 0] * _scaled("H", modes[edge], k_out, radius, 0))
    truncation = float(np.nanmax(tail)) if np.any(np.isfinite(tail)) else 0.0
    if np.any(dropped):
        warnings.warn(
            f"{int(np.sum(dropped))} modes dropped after Hankel overflow "
            f"(truncation estimate {truncation:.3e})",
            ModeTruncationWarning,
            stacklevel=3,
        )
    LOGGER.debug(
        "Series %s solve: radius=%g, %d modes, truncation estimate %.3e",
        bc,
        radius,
        modes.size,
        truncation,
    )
    return SeriesSolution(
        radius=radius,
        bc=bc,
        k=k,
        medium=medium,
        grid=grid,
        modes=modes,
        coefficients=solution[:, 0],
        interior=solution[:, 1] if solution.shape[1] == 2 else None,
        incident=incident,
        data=data,
        truncation_error=truncation,
    )


def series_solve(
    radius: float,
    bc: BoundaryKind,
    k: float,
    incident: IncidentField,
    *,
    medium: Medium | None = None,
    n_modes: int | None = None,
    n_nodes: int = 256,
) -> SeriesSolution:
    """Scattering of a plane wave by a circle, mode by mode.

    Parameters
    ----------
    radius : float
        Circle radius ``a``.
    bc : BoundaryKind
        Boundary condition on the circle.
    k : float
        Global wavenumber; each region uses ``k / sqrt(alpha)``.
    incident : IncidentField
        Plane wave travelling in the exterior region.
    medium : Medium, optional
        Medium coefficients; defaults to ``alpha = 1`` everywhere.
    n_modes : int, optional
        Highest mode ``M``; defaults to ``ceil(k a) + 40``.
    n_nodes : int
        Node count of the boundary grid used for traces.
    """
    medium = medium or Medium()
    if incident.kind != "plane_wave":
        msg = "The series backend handles plane-wave incidence only"
        raise UnsupportedError(msg)
    k_out = medium.exterior_wavenumber(k)
    if not math.isclose(incident.wavenumber, k_out, rel_tol=1e-12):
        msg = f"Incident wavenumber {incident.wavenumber} does not match exterior k {k_out}"
        raise DomainError(msg, field="incident")
    if radius <= 0.0:
        msg = f"Circle radius must be positive, got {radius}"
        raise DomainError(msg, field="radius")

    count = n_modes or default_mode_count(radius, k_out, medium.interior_wavenumber(k))
    modes = np.arange(-count, count + 1)
    matrices = _operator(bc, modes, radius, k, medium, 0)
    rhs = _incident_rhs(bc, modes, radius, k, medium, incident, 0)
    solution, dropped = _solve_modes(matrices, rhs)

    grid = build_grid(circle(radius), n_nodes)
    data = _incident_boundary_data(bc, grid, incident, medium)
    return _assemble(
        radius=radius,
        bc=bc,
        k=k,
        medium=medium,
        modes=modes,
        solution=solution,
        dropped=dropped,
        grid=grid,
        incident=incident,
        data=data,
    )


def _incident_boundary_data(
    bc: BoundaryKind, grid: BoundaryGrid, incident: IncidentField, medium: Medium
) -> BoundaryData:
    return incident_data(bc, incident.jet(grid, medium.alpha), medium)


def _data_modes(
    data: BoundaryScalar, modes: npt.NDArray[np.int64]
) -> npt.NDArray[np.complex128]:
    return data.coefficients[modes % data.grid.n_nodes]


def series_solve_data(
    radius: float,
    bc: BoundaryKind,
    k: float,
    data: BoundaryData,
    *,
    medium: Medium | None = None,
    n_modes: int | None = None,
) -> SeriesSolution:
    """Radiating solution on a circle with prescribed boundary data.

    ``data`` lives on an equispaced circle grid; transmission data are the pair
    of jumps ``([u], [alpha d_n u])``.
    """
    medium = medium or Medium()
    parts = data if isinstance(data, tuple) else (data,)
    if (bc is BoundaryKind.TRANSMISSION) != (len(parts) == 2):
        msg = f"Boundary data do not match the {bc} condition"
        raise DomainError(msg, field="data")

    n_nodes = parts[0].grid.n_nodes
    limit = n_nodes // 2 - 1
    default = default_mode_count(
        radius, medium.exterior_wavenumber(k), medium.interior_wavenumber(k)
    ) + 40
    count = min(n_modes or default, limit)
    modes = np.arange(-count, count + 1)
    matrices = _operator(bc, modes, radius, k, medium, 0)
    rhs = np.stack([_data_modes(part, modes) for part in parts], axis=-1)
    solution, dropped = _solve_modes(matrices, rhs)
    return _assemble(
        radius=radius,
        bc=bc,
        k=k,
        medium=medium,
        modes=modes,
        solution=solution,
        dropped=dropped,
        grid=parts[0].grid,
        incident=None,
        data=data,
    )
