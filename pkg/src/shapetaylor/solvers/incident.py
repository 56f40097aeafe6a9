from __future__ import annotations

import math
from typing import TYPE_CHECKING, Literal

import msgspec
import numpy as np

from shapetaylor.boundary_calculus import jet_from_cartesian
from shapetaylor.lib.exceptions import DomainError
from shapetaylor.specfun import hankel1_derivative

if TYPE_CHECKING:
    import numpy.typing as npt

    from shapetaylor.boundary_calculus import BoundaryJet
    from shapetaylor.geometry import BoundaryGrid

__all__ = ("CartesianDerivatives", "IncidentField", "IncidentKind")

type IncidentKind = Literal["plane_wave", "point_source"]
type CartesianDerivatives = tuple[
    npt.NDArray[np.complex128],
    npt.NDArray[np.complex128],
    npt.NDArray[np.complex128],
    npt.NDArray[np.complex128],
]


class IncidentField(msgspec.Struct, frozen=True, kw_only=True):
    """Incident wave ``exp(i k d.x)`` or point source ``H0(k |x - x0|)``.

    ``wavenumber`` is the wavenumber of the wave itself, i.e. ``k / sqrt(alpha)``
    of the region it travels in.
    """

    kind: IncidentKind
    wavenumber: float
    direction: tuple[float, float] = (1.0, 0.0)
    location: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.wavenumber) and self.wavenumber > 0.0):
            msg = f"Incident wavenumber must be positive, got {self.wavenumber}"
            raise DomainError(msg, field="wavenumber")
        if self.kind == "plane_wave" and abs(math.hypot(*self.direction) - 1.0) > 1e-12:
            msg = f"Plane-wave direction must be a unit vector, got {self.direction}"
            raise DomainError(msg, field="direction")

    @classmethod
    def plane_wave(cls, direction: tuple[float, float], wavenumber: float) -> IncidentField:
        """Plane wave travelling along ``direction``, normalised to unit length."""
        norm = math.hypot(*direction)
        if norm == 0.0:
            msg = "Plane-wave direction must be nonzero"
            raise DomainError(msg, field="direction")
        unit = (direction[0] / norm, direction[1] / norm)
        return cls(kind="plane_wave", wavenumber=wavenumber, direction=unit)

    @classmethod
    def point_source(cls, location: tuple[float, float], wavenumber: float) -> IncidentField:
        """Outgoing point source ``H0(k |x - location|)``."""
        return cls(kind="point_source", wavenumber=wavenumber, location=location)

    @property
    def angle(self) -> float:
        """Propagation angle of a plane wave."""
        return math.atan2(self.direction[1], self.direction[0])

    def derivatives(self, points: npt.ArrayLike) -> CartesianDerivatives:
        """Value, gradient, Hessian and third-derivative tensor at ``points`` ``(m, 2)``."""
        x = np.atleast_2d(np.asarray(points, dtype=np.float64))
        k = self.wavenumber
        if self.kind == "plane_wave":
            d = np.asarray(self.direction)
            u = np.exp(1j * k * (x @ d))
            dd = np.outer(d, d)
            ddd = np.multiply.outer(dd, d)
            return (
                u,
                1j * k * u[:, None] * d,
                -(k**2) * u[:, None, None] * dd,
                -1j * k**3 * u[:, None, None, None] * ddd,
            )

        offset = x - np.asarray(self.location)
        r = np.hypot(offset[:, 0], offset[:, 1])
        if np.any(r == 0.0):
            msg = "Point-source field is singular at its location"
            raise DomainError(msg, field="points")
        rho = offset / r[:, None]
        f0, f1, f2, f3 = (k**p * hankel1_derivative(0, k * r, p) for p in range(4))

        eye = np.eye(2)
        rr = np.einsum("mi,mj->mij", rho, rho)
        rrr = np.einsum("mij,mk->mijk", rr, rho)
        sym = (
            np.einsum("ij,mk->mijk", eye, rho)
            + np.einsum("ik,mj->mijk", eye, rho)
            + np.einsum("jk,mi->mijk", eye, rho)
        )
        hessian = (f2 - f1 / r)[:, None, None] * rr + (f1 / r)[:, None, None] * eye
        third = (f3 - 3 * f2 / r + 3 * f1 / r**2)[:, None, None, None] * rrr + (
            f2 / r - f1 / r**2
        )[:, None, None, None] * sym
        return f0, f1[:, None] * rho, hessian, third

    def value(self, points: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        return self.derivatives(points)[0]

    def gradient(self, points: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        return self.derivatives(points)[1]

    def jet(self, grid: BoundaryGrid, alpha: float = 1.0) -> BoundaryJet:
        """Analytic boundary jet of the incident field in a region with coefficient ``alpha``."""
        value, gradient, hessian, third = self.derivatives(grid.points)
        k = self.wavenumber * math.sqrt(alpha)
        return jet_from_cartesian(grid, value, gradient, hessian, third, k, alpha)

    def plane_wave_modes(self, modes: npt.NDArray[np.int64]) -> npt.NDArray[np.complex128]:
        """Factors ``i^m exp(-i m theta_d)`` of the Jacobi-Anger expansion."""
        if self.kind != "plane_wave":
            msg = "Mode expansions are only available for plane waves"
            raise DomainError(msg, field="kind")
        return (1j) ** modes * np.exp(-1j * modes * self.angle)
