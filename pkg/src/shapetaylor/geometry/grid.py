from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np

from shapetaylor.geometry.exceptions import DegenerateCurveError
from shapetaylor.utils.fourier import nodes, trig_derivative
from shapetaylor.utils.validation import ensure_node_count

if TYPE_CHECKING:
    import numpy.typing as npt

    from shapetaylor.geometry.curves import ClosedCurve

__all__ = ("BoundaryGrid", "as_complex", "as_pairs", "build_grid")

LOGGER = logging.getLogger(__name__)


def as_pairs(z: npt.ArrayLike) -> npt.NDArray[np.float64] | npt.NDArray[np.complex128]:
    """Stack a complex plane vector ``a + i b`` into ``(..., 2)`` components.

    Complex-valued vector fields are passed as a pair of complex arrays
    ``(re_a + i im_a, re_b + i im_b)`` so this helper only applies to real
    geometric vectors.
    """
    values = np.asarray(z, dtype=np.complex128)
    return np.stack([values.real, values.imag], axis=-1)


def as_complex(pairs: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """Inverse of :func:`as_pairs` for real ``(..., 2)`` arrays."""
    values = np.asarray(pairs, dtype=np.float64)
    return values[..., 0] + 1j * values[..., 1]


class BoundaryGrid:
    """Equispaced quadrature grid on a closed curve.

    Geometry is stored as complex numbers internally (``tangent``, ``normal``);
    the ``points``, ``tangents`` and ``normals`` properties expose ``(n, 2)`` arrays.
    The outward normal is ``n = -i tau`` for a counterclockwise curve and the
    curvature obeys ``dn/ds = kappa tau``.
    """

    __slots__ = (
        "curvature",
        "curvature_s",
        "curve",
        "dz",
        "ddz",
        "n_nodes",
        "normal",
        "speed",
        "tangent",
        "theta",
        "z",
    )

    def __init__(self, curve: ClosedCurve, n_nodes: int) -> None:
        self.curve = curve
        self.n_nodes = n_nodes
        self.theta = nodes(n_nodes)
        if curve.n_samples == n_nodes:
            self.z = np.array(curve.samples)
            self.dz = trig_derivative(self.z, 1)
            self.ddz = trig_derivative(self.z, 2)
        else:
            self.z = curve.evaluate(self.theta)
            self.dz = curve.evaluate(self.theta, 1)
            self.ddz = curve.evaluate(self.theta, 2)

        self.speed = np.abs(self.dz)
        scale = float(np.max(self.speed)) if self.speed.size else 0.0
        if not np.all(np.isfinite(self.speed)) or np.min(self.speed) <= 1e-12 * max(scale, 1.0):
            raise DegenerateCurveError(float(np.min(self.speed)))

        self.tangent = self.dz / self.speed
        self.normal = -1j * self.tangent
        self.curvature = np.imag(np.conj(self.dz) * self.ddz) / self.speed**3
        self.curvature_s = trig_derivative(self.curvature, 1).real / self.speed

    @property
    def points(self) -> npt.NDArray[np.float64]:
        return as_pairs(self.z)

    @property
    def tangents(self) -> npt.NDArray[np.float64]:
        return as_pairs(self.tangent)

    @property
    def normals(self) -> npt.NDArray[np.float64]:
        return as_pairs(self.normal)

    @property
    def weights(self) -> npt.NDArray[np.float64]:
        """Trapezoidal arclength weights ``|x'(theta_j)| 2 pi / n``."""
        return self.speed * (2.0 * np.pi / self.n_nodes)

    @property
    def spacing(self) -> float:
        """Largest node spacing in arclength."""
        return float(np.max(self.weights))

    @property
    def length(self) -> float:
        return float(np.sum(self.weights))

    @property
    def signed_area(self) -> float:
        """Enclosed area, negative for a clockwise parametrisation."""
        return 0.5 * float(np.sum(np.imag(np.conj(self.z) * self.dz))) * 2.0 * np.pi / self.n_nodes

    def same_nodes(self, other: BoundaryGrid) -> bool:
        """Whether ``other`` samples the same curve at the same nodes."""
        return self.n_nodes == other.n_nodes and bool(np.allclose(self.z, other.z, atol=1e-13))

    def __repr__(self) -> str:
        return f"BoundaryGrid(n_nodes={self.n_nodes}, length={self.length:.6g})"


def build_grid(curve: ClosedCurve, n_nodes: int) -> BoundaryGrid:
    """Sample ``curve`` on ``n_nodes`` equispaced parameters with spectral geometry.

    Parameters
    ----------
    curve : ClosedCurve
        The boundary curve, oriented counterclockwise.
    n_nodes : int
        Even number of nodes, at least 16.

    Returns
    -------
    BoundaryGrid
        Grid with unit tangents and outward normals, speed and curvature.
    """
    ensure_node_count(n_nodes)
    grid = BoundaryGrid(curve, n_nodes)
    LOGGER.debug("Built %d-node grid (length %.6g)", n_nodes, grid.length)
    return grid
