"""Single-layer Nystrom solver for exterior Helmholtz problems on smooth curves.

The scattered field is ``u = S[psi]`` with the outgoing kernel ``(i/4) H0(k |x - y|)``.
Both the single-layer operator and its normal derivative are discretised with
the trigonometric product rule for logarithmic kernels, splitting each kernel into
``M1(t, tau) ln(4 sin^2((t - tau)/2)) + M2(t, tau)`` with smooth ``M1``, ``M2``.
"""

from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING

import numpy as np
from scipy import linalg

from shapetaylor.boundary_calculus import BoundaryScalar
from shapetaylor.solvers.base import ScatterSolution, incident_data
from shapetaylor.solvers.exceptions import (
    AccuracyGuardError,
    NearResonanceError,
    UnsupportedBoundaryError,
)
from shapetaylor.solvers.models import BoundaryKind, Medium
from shapetaylor.specfun import cyl_bessel, hankel1
from shapetaylor.utils.validation import ensure_node_count

if TYPE_CHECKING:
    import numpy.typing as npt

    from shapetaylor.geometry import BoundaryGrid
    from shapetaylor.solvers.base import BoundaryData
    from shapetaylor.solvers.incident import IncidentField

__all__ = ("NystromSolution", "NystromSolver", "nystrom_scatter", "nystrom_solve")

LOGGER = logging.getLogger(__name__)

CONDITION_LIMIT = 1e12
GUARD_SPACINGS = 3.0


def _log_weights(n_nodes: int) -> npt.NDArray[np.float64]:
    # Product-rule weights R_j(t_i), a circulant in i - j.
    n = n_nodes // 2
    lags = np.arange(n_nodes)
    m = np.arange(1, n)
    series = np.cos(np.multiply.outer(lags, m) * math.pi / n) @ (1.0 / m)
    row = -(2.0 * math.pi / n) * series - (math.pi / n**2) * np.cos(lags * math.pi)
    return row[(lags[:, None] - lags[None, :]) % n_nodes]


def layer_matrices(
    grid: BoundaryGrid, k: float
) -> tuple[npt.NDArray[np.complex128], npt.NDArray[np.complex128]]:
    """Discrete single-layer operator ``S`` and adjoint double-layer operator ``K'``.

    Both act on density samples at the grid nodes and return boundary values.
    """
    n_nodes = grid.n_nodes
    n = n_nodes // 2
    speed = grid.speed
    diagonal = np.eye(n_nodes, dtype=bool)

    gap = grid.z[:, None] - grid.z[None, :]
    r = np.where(diagonal, 1.0, np.abs(gap))
    kr = k * r
    angle = grid.theta[:, None] - grid.theta[None, :]
    log_term = np.where(diagonal, 0.0, np.log(np.where(diagonal, 1.0, 4.0 * np.sin(angle / 2.0) ** 2)))
    weights = _log_weights(n_nodes)

    j0 = cyl_bessel("J", 0, kr)
    single = 0.25j * hankel1(0, kr) * speed
    single_log = -j0 * speed / (4.0 * math.pi)
    single_smooth = single - single_log * log_term
    euler = np.euler_gamma
    single_log[diagonal] = -speed / (4.0 * math.pi)
    single_smooth[diagonal] = (
        0.25j - euler / (2.0 * math.pi) - np.log(k * speed / 2.0) / (2.0 * math.pi)
    ) * speed

    projection = np.real(np.conj(grid.normal)[:, None] * gap) / r
    adjoint = -0.25j * k * hankel1(1, kr) * projection * speed
    adjoint_log = k * cyl_bessel("J", 1, kr) * projection * speed / (4.0 * math.pi)
    adjoint_smooth = adjoint - adjoint_log * log_term
    adjoint_log[diagonal] = 0.0
    adjoint_smooth[diagonal] = -grid.curvature * speed / (4.0 * math.pi)

    smooth_weight = math.pi / n
    single_matrix = weights * single_log + smooth_weight * single_smooth
    adjoint_matrix = weights * adjoint_log + smooth_weight * adjoint_smooth
    return single_matrix, adjoint_matrix


class NystromSolver:
    """Factorised boundary-integral operator for one curve, wavenumber and condition.

    The LU factors are computed once and shared read-only by every solve, so the
    base problem and all of its shape-derivative problems reuse them.
    """

    __slots__ = ("_lu", "adjoint", "bc", "condition", "grid", "k", "medium", "single")

    def __init__(self, grid: BoundaryGrid, bc: BoundaryKind, k: float, medium: Medium | None = None) -> None:
        if bc is BoundaryKind.TRANSMISSION:
            raise UnsupportedBoundaryError(bc, "nystrom")
        ensure_node_count(grid.n_nodes)
        self.grid = grid
        self.bc = bc
        self.k = k
        self.medium = medium or Medium()
        self.single, self.adjoint = layer_matrices(grid, self.medium.exterior_wavenumber(k))

        identity = np.eye(grid.n_nodes)
        match bc:
            case BoundaryKind.SOFT:
                matrix = self.single
            case BoundaryKind.HARD:
                matrix = self.adjoint - 0.5 * identity
            case _:
                matrix = (
                    self.medium.alpha * (self.adjoint - 0.5 * identity)
                    + 1j * self.medium.impedance * self.single
                )
        self.condition = float(np.linalg.cond(matrix))
        LOGGER.debug(
            "Nystrom %s system: %d nodes, condition number %.3e", bc, grid.n_nodes, self.condition
        )
        if not np.isfinite(self.condition) or self.condition > CONDITION_LIMIT:
            raise NearResonanceError(self.condition, k)
        self._lu = linalg.lu_factor(matrix)

    def solve(self, data: BoundaryData, incident: IncidentField | None = None) -> NystromSolution:
        """Solve for the density that reproduces ``data``."""
        if not isinstance(data, BoundaryScalar):
            raise UnsupportedBoundaryError(BoundaryKind.TRANSMISSION, "nystrom")
        density = linalg.lu_solve(self._lu, data.values)
        return NystromSolution(self, density, data=data, incident=incident)


class NystromSolution(ScatterSolution):
    """Single-layer potential ``S[psi]`` with its density on the grid nodes."""

    backend = "nystrom"

    __slots__ = ("bc", "data", "density", "grid", "incident", "k", "medium", "solver")

    def __init__(
        self,
        solver: NystromSolver,
        density: npt.NDArray[np.complex128],
        *,
        data: BoundaryData | None = None,
        incident: IncidentField | None = None,
    ) -> None:
        self.solver = solver
        self.density = density
        self.grid = solver.grid
        self.bc = solver.bc
        self.k = solver.k
        self.medium = solver.medium
        self.data = data
        self.incident = incident

    def trace(self) -> BoundaryScalar:
        return BoundaryScalar(self.grid, self.solver.single @ self.density)

    def normal_trace(self) -> BoundaryScalar:
        return BoundaryScalar(self.grid, self.solver.adjoint @ self.density - 0.5 * self.density)

    def _sources(self, points: npt.ArrayLike) -> tuple[npt.NDArray[np.complex128], npt.NDArray[np.float64]]:
        x = np.atleast_2d(np.asarray(points, dtype=np.float64))
        gap = (x[:, 0] + 1j * x[:, 1])[:, None] - self.grid.z[None, :]
        distance = np.abs(gap)
        required = GUARD_SPACINGS * self.grid.spacing
        nearest = float(np.min(distance)) if distance.size else math.inf
        if nearest < required:
            raise AccuracyGuardError(nearest, required)
        return gap, distance

    def evaluate(
        self, points: npt.ArrayLike, *, gradient: bool = False
    ) -> npt.NDArray[np.complex128]:
        gap, distance = self._sources(points)
        k_out = self.exterior_wavenumber
        weighted = self.density * self.grid.weights
        if not gradient:
            return (0.25j * hankel1(0, k_out * distance)) @ weighted
        kernel = -0.25j * k_out * hankel1(1, k_out * distance) / distance
        components = kernel[..., None] * np.stack([gap.real, gap.imag], axis=-1)
        return np.einsum("pjc,j->pc", components, weighted)

    def far_field(self, angles: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        theta = np.asarray(angles, dtype=np.float64)
        k_out = self.exterior_wavenumber
        directions = np.exp(1j * theta)
        projection = np.real(np.conj(directions)[..., None] * self.grid.z)
        weighted = self.density * self.grid.weights
        factor = np.exp(0.25j * math.pi) / math.sqrt(8.0 * math.pi * k_out)
        return factor * (np.exp(-1j * k_out * projection) @ weighted)

    def solve_data(self, data: BoundaryData) -> NystromSolution:
        """Reuse the factorised system for other boundary data."""
        return self.solver.solve(data)


def nystrom_solve(
    grid: BoundaryGrid,
    bc: BoundaryKind,
    data: BoundaryScalar,
    k: float,
    medium: Medium | None = None,
) -> NystromSolution:
    """Radiating field with prescribed soft, hard or impedance boundary data."""
    return NystromSolver(grid, bc, k, medium).solve(data)


def nystrom_scatter(
    grid: BoundaryGrid,
    bc: BoundaryKind,
    k: float,
    incident: IncidentField,
    medium: Medium | None = None,
) -> NystromSolution:
    """Scattered field of ``incident`` by the obstacle bounded by ``grid``."""
    solver = NystromSolver(grid, bc, k, medium)
    data = incident_data(bc, incident.jet(grid, solver.medium.alpha), solver.medium)
    return solver.solve(data, incident)
