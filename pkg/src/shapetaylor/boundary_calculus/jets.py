from __future__ import annotations

import logging
from typing import TYPE_CHECKING, ClassVar

import numpy as np

from shapetaylor.boundary_calculus.exceptions import GridMismatchError
from shapetaylor.boundary_calculus.scalars import BoundaryScalar, spectral_derivative

if TYPE_CHECKING:
    from collections.abc import Iterator

    import numpy.typing as npt

    from shapetaylor.geometry import BoundaryGrid

__all__ = ("BoundaryJet", "build_jet", "jet_from_cartesian")

LOGGER = logging.getLogger(__name__)


class BoundaryJet:
    """Tangential and normal derivatives of a Helmholtz solution on the boundary.

    ``s`` denotes arclength and ``n`` the outward normal; ``u_nss`` is
    ``d_ss`` of the normal derivative trace under the straight-normal extension.
    """

    FIELDS: ClassVar[tuple[str, ...]] = (
        "u",
        "u_s",
        "u_ss",
        "u_n",
        "u_ns",
        "u_nn",
        "u_nss",
        "u_nns",
        "u_nnn",
    )

    __slots__ = (
        "alpha",
        "grid",
        "k",
        "u",
        "u_n",
        "u_nn",
        "u_nnn",
        "u_nns",
        "u_ns",
        "u_nss",
        "u_s",
        "u_ss",
    )

    def __init__(
        self,
        grid: BoundaryGrid,
        k: float,
        alpha: float,
        **entries: BoundaryScalar,
    ) -> None:
        self.grid = grid
        self.k = k
        self.alpha = alpha
        for name in self.FIELDS:
            value = entries[name]
            if value.grid.n_nodes != grid.n_nodes:
                raise GridMismatchError(grid.n_nodes, value.grid.n_nodes)
            setattr(self, name, value)

    def items(self) -> Iterator[tuple[str, BoundaryScalar]]:
        """Entries present in the jet, in canonical order."""
        for name in self.FIELDS:
            yield name, getattr(self, name)

    def helmholtz_residual(self) -> float:
        """Max of ``|u_nn + kappa u_n + u_ss + (k^2/alpha) u|`` over the nodes."""
        residual = (
            self.u_nn.values
            + self.grid.curvature * self.u_n.values
            + self.u_ss.values
            + (self.k**2 / self.alpha) * self.u.values
        )
        return float(np.max(np.abs(residual)))

    def _combine(self, other: BoundaryJet, sign: float) -> BoundaryJet:
        entries = {name: getattr(self, name) + sign * getattr(other, name) for name in self.FIELDS}
        return BoundaryJet(self.grid, self.k, self.alpha, **entries)

    def __add__(self, other: BoundaryJet) -> BoundaryJet:
        return self._combine(other, 1.0)

    def __sub__(self, other: BoundaryJet) -> BoundaryJet:
        return self._combine(other, -1.0)

    def scaled(self, factor: complex) -> BoundaryJet:
        entries = {name: factor * value for name, value in self.items()}
        return BoundaryJet(self.grid, self.k, self.alpha, **entries)

    def __repr__(self) -> str:
        return f"BoundaryJet(n_nodes={self.grid.n_nodes}, k={self.k}, alpha={self.alpha})"


def build_jet(
    cauchy: tuple[BoundaryScalar, BoundaryScalar], grid: BoundaryGrid, k: float, alpha: float = 1.0
) -> BoundaryJet:
    """Reconstruct the third-order boundary jet from Cauchy data ``(u, u_n)``.

    Tangential derivatives are spectral; normal derivatives follow from the
    equation ``div(alpha grad u) + k^2 u = 0`` written in the curvilinear frame
    ``x = gamma(s) + nu n(s)`` with metric factor ``1 + nu kappa``.

    Parameters
    ----------
    cauchy : tuple of BoundaryScalar
        Trace and normal-derivative trace on the side where ``u`` solves the equation.
    grid : BoundaryGrid
        Grid the samples live on.
    k : float
        Wavenumber of the region.
    alpha : float
        Medium coefficient of the region.

    Returns
    -------
    BoundaryJet
        All derivatives up to total order three.
    """
    u, u_n = cauchy
    for part in (u, u_n):
        if part.grid.n_nodes != grid.n_nodes:
            raise GridMismatchError(grid.n_nodes, part.grid.n_nodes)

    kappa = grid.curvature
    kappa_s = grid.curvature_s
    mass = k**2 / alpha

    u_s = spectral_derivative(u, "s", 1)
    u_ss = spectral_derivative(u_s, "s", 1)
    u_ns = spectral_derivative(u_n, "s", 1)
    u_nss = spectral_derivative(u_ns, "s", 1)
    u_nn = -mass * u - kappa * u_n - u_ss
    u_nns = spectral_derivative(u_nn, "s", 1)
    u_nnn = (
        -mass * u_n
        - kappa * u_nn
        + kappa**2 * u_n
        - u_nss
        + 2.0 * kappa * u_ss
        + kappa_s * u_s
    )
    return BoundaryJet(
        grid,
        k,
        alpha,
        u=u,
        u_s=u_s,
        u_ss=u_ss,
        u_n=u_n,
        u_ns=u_ns,
        u_nn=u_nn,
        u_nss=u_nss,
        u_nns=u_nns,
        u_nnn=u_nnn,
    )


def _contract(tensor: npt.NDArray[np.complex128], *vectors: npt.NDArray[np.float64]) -> npt.NDArray[np.complex128]:
    result = tensor
    for vector in vectors:
        result = np.einsum("ni...,ni->n...", result, vector)
    return result


def jet_from_cartesian(
    grid: BoundaryGrid,
    value: npt.ArrayLike,
    gradient: npt.ArrayLike,
    hessian: npt.ArrayLike,
    third: npt.ArrayLike,
    k: float,
    alpha: float = 1.0,
) -> BoundaryJet:
    """Project Cartesian derivatives of a field onto the ``(s, n)`` boundary jet.

    Parameters
    ----------
    grid : BoundaryGrid
        Boundary grid.
    value, gradient, hessian, third : array_like
        Field value ``(n,)``, gradient ``(n, 2)``, Hessian ``(n, 2, 2)`` and third
        derivative tensor ``(n, 2, 2, 2)`` at the grid points.
    k, alpha : float
        Wavenumber and medium coefficient carried by the jet.
    """
    tau = grid.tangents
    nrm = grid.normals
    kappa = grid.curvature
    kappa_s = grid.curvature_s
    d1 = np.asarray(gradient, dtype=np.complex128)
    d2 = np.asarray(hessian, dtype=np.complex128)
    d3 = np.asarray(third, dtype=np.complex128)

    u_s = _contract(d1, tau)
    u_n = _contract(d1, nrm)
    d2_tt = _contract(d2, tau, tau)
    d2_nt = _contract(d2, nrm, tau)
    d2_nn = _contract(d2, nrm, nrm)

    entries = {
        "u": np.asarray(value, dtype=np.complex128),
        "u_s": u_s,
        "u_n": u_n,
        "u_ss": d2_tt - kappa * u_n,
        "u_ns": kappa * u_s + d2_nt,
        "u_nn": d2_nn,
        "u_nnn": _contract(d3, nrm, nrm, nrm),
        "u_nss": (
            kappa_s * u_s
            - kappa**2 * u_n
            + 2.0 * kappa * d2_tt
            - kappa * d2_nn
            + _contract(d3, nrm, tau, tau)
        ),
        "u_nns": 2.0 * kappa * d2_nt + _contract(d3, nrm, nrm, tau),
    }
    scalars = {name: BoundaryScalar(grid, values) for name, values in entries.items()}
    return BoundaryJet(grid, k, alpha, **scalars)
