from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, cast

from shapetaylor.boundary_calculus import BoundaryScalar, build_jet
from shapetaylor.lib.exceptions import DomainError
from shapetaylor.solvers.exceptions import UnsupportedBoundaryError
from shapetaylor.solvers.models import BoundaryKind

if TYPE_CHECKING:
    import numpy as np
    import numpy.typing as npt

    from shapetaylor.boundary_calculus import BoundaryJet
    from shapetaylor.geometry import BoundaryGrid
    from shapetaylor.solvers.incident import IncidentField
    from shapetaylor.solvers.models import Medium

__all__ = (
    "BoundaryData",
    "ScatterSolution",
    "boundary_data_from_jet",
    "incident_data",
    "transmission_jumps",
)

# Soft, hard and impedance data are one trace; transmission data are the jumps
# ``([u], [alpha d_n u])`` taken exterior minus interior.
type BoundaryData = BoundaryScalar | tuple[BoundaryScalar, BoundaryScalar]


class ScatterSolution(ABC):
    """Radiating exterior field, with the interior field for transmission problems.

    ``incident`` is set for scattering solutions and ``None`` for fields solving a
    problem with prescribed boundary data (shape derivatives).
    """

    backend: str
    grid: BoundaryGrid
    bc: BoundaryKind
    k: float
    medium: Medium
    incident: IncidentField | None
    data: BoundaryData | None

    @property
    def exterior_wavenumber(self) -> float:
        return self.medium.exterior_wavenumber(self.k)

    @abstractmethod
    def trace(self) -> BoundaryScalar:
        """Exterior trace of the scattered field."""

    @abstractmethod
    def normal_trace(self) -> BoundaryScalar:
        """Exterior normal derivative of the scattered field."""

    @abstractmethod
    def evaluate(
        self, points: npt.ArrayLike, *, gradient: bool = False
    ) -> npt.NDArray[np.complex128]:
        """Scattered field (or its ``(m, 2)`` gradient) at exterior points."""

    @abstractmethod
    def far_field(self, angles: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        """Far-field pattern ``u(x) ~ exp(i k r) / sqrt(r) u_inf(x / r)``."""

    @abstractmethod
    def solve_data(self, data: BoundaryData) -> ScatterSolution:
        """Solve the same boundary problem on the same curve with new boundary data."""

    def cauchy(self) -> tuple[BoundaryScalar, BoundaryScalar]:
        return self.trace(), self.normal_trace()

    def jet(self) -> BoundaryJet:
        """Boundary jet of the scattered field."""
        return build_jet(self.cauchy(), self.grid, self.k, self.medium.alpha)

    def total_jet(self) -> BoundaryJet:
        """Boundary jet of the exterior total field."""
        jet = self.jet()
        if self.incident is None:
            return jet
        return jet + self.incident.jet(self.grid, self.medium.alpha)

    def interior_jet(self) -> BoundaryJet:
        """Boundary jet of the interior field of a transmission problem."""
        raise UnsupportedBoundaryError(self.bc, self.backend)

    def boundary_residual(self) -> float:
        """Max violation of the boundary condition on the grid.

        For scattering solutions this is the residual of the total field.
        """
        if self.data is None:
            msg = "Solution carries no boundary data to check against"
            raise DomainError(msg)
        if self.bc is BoundaryKind.TRANSMISSION:
            pair = cast("tuple[BoundaryScalar, BoundaryScalar]", self.data)
            jumps = transmission_jumps(self.jet(), self.interior_jet(), self.medium)
            return max((jump - datum).max_abs() for jump, datum in zip(jumps, pair, strict=True))
        datum = cast("BoundaryScalar", self.data)
        return (boundary_data_from_jet(self.bc, self.jet(), self.medium) - datum).max_abs()


def boundary_data_from_jet(bc: BoundaryKind, jet: BoundaryJet, medium: Medium) -> BoundaryScalar:
    """Apply the impenetrable boundary operator of ``bc`` to a field's jet."""
    match bc:
        case BoundaryKind.SOFT:
            return jet.u
        case BoundaryKind.HARD:
            return jet.u_n
        case BoundaryKind.IMPEDANCE:
            return medium.alpha * jet.u_n + 1j * medium.impedance * jet.u
        case BoundaryKind.TRANSMISSION:
            msg = "Transmission data are a pair of jumps"
            raise TypeError(msg)


def transmission_jumps(
    outer: BoundaryJet, inner: BoundaryJet, medium: Medium
) -> tuple[BoundaryScalar, BoundaryScalar]:
    """Jumps ``([u], [alpha d_n u])`` across the interface, exterior minus interior."""
    return outer.u - inner.u, medium.alpha * outer.u_n - medium.alpha_inner * inner.u_n


def incident_data(bc: BoundaryKind, incident_jet: BoundaryJet, medium: Medium) -> BoundaryData:
    """Boundary data that cancel the incident field in the base scattering problem."""
    if bc is BoundaryKind.TRANSMISSION:
        return -incident_jet.u, -medium.alpha * incident_jet.u_n
    return -boundary_data_from_jet(bc, incident_jet, medium)
