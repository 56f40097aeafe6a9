from __future__ import annotations

from typing import TYPE_CHECKING, Literal

import numpy as np

from shapetaylor.boundary_calculus.exceptions import GridMismatchError
from shapetaylor.lib.exceptions import DomainError
from shapetaylor.utils.fourier import trig_derivative

if TYPE_CHECKING:
    import numpy.typing as npt

    from shapetaylor.geometry import BoundaryGrid

__all__ = ("BoundaryScalar", "Variable", "spectral_derivative", "trace_decompose")

type Variable = Literal["theta", "s"]


class BoundaryScalar:
    """Complex samples of a boundary trace on the nodes of a :class:`BoundaryGrid`."""

    __slots__ = ("_coefficients", "grid", "values")

    # Defer to the reflected operators when mixed with numpy arrays.
    __array_ufunc__ = None

    def __init__(self, grid: BoundaryGrid, values: npt.ArrayLike) -> None:
        samples = np.asarray(values, dtype=np.complex128)
        if samples.shape != (grid.n_nodes,):
            raise GridMismatchError(grid.n_nodes, samples.size)
        self.grid = grid
        self.values = samples
        self._coefficients: npt.NDArray[np.complex128] | None = None

    @classmethod
    def zeros(cls, grid: BoundaryGrid) -> BoundaryScalar:
        """Zero samples on ``grid``."""
        return cls(grid, np.zeros(grid.n_nodes, dtype=np.complex128))

    @property
    def coefficients(self) -> npt.NDArray[np.complex128]:
        """FFT coefficients ``c_m`` with ``f(theta_j) = sum_m c_m exp(i m theta_j)``."""
        if self._coefficients is None:
            self._coefficients = np.fft.fft(self.values) / self.grid.n_nodes
        return self._coefficients

    def _coerce(self, other: BoundaryScalar | complex | npt.ArrayLike) -> npt.NDArray[np.complex128] | complex:
        if isinstance(other, BoundaryScalar):
            if other.grid.n_nodes != self.grid.n_nodes:
                raise GridMismatchError(self.grid.n_nodes, other.grid.n_nodes)
            return other.values
        if isinstance(other, (int, float, complex)):
            return other
        values = np.asarray(other, dtype=np.complex128)
        if values.shape != self.values.shape:
            raise GridMismatchError(self.grid.n_nodes, values.size)
        return values

    def __add__(self, other: BoundaryScalar | complex | npt.ArrayLike) -> BoundaryScalar:
        return BoundaryScalar(self.grid, self.values + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other: BoundaryScalar | complex | npt.ArrayLike) -> BoundaryScalar:
        return BoundaryScalar(self.grid, self.values - self._coerce(other))

    def __rsub__(self, other: BoundaryScalar | complex | npt.ArrayLike) -> BoundaryScalar:
        return BoundaryScalar(self.grid, self._coerce(other) - self.values)

    def __mul__(self, other: BoundaryScalar | complex | npt.ArrayLike) -> BoundaryScalar:
        return BoundaryScalar(self.grid, self.values * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self) -> BoundaryScalar:
        return BoundaryScalar(self.grid, -self.values)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def __repr__(self) -> str:
        return f"BoundaryScalar(n_nodes={self.grid.n_nodes}, max_abs={self.max_abs():.3e})"


def spectral_derivative(f: BoundaryScalar, wrt: Variable = "s", order: int = 1) -> BoundaryScalar:
    """Differentiate the trigonometric interpolant of ``f``.

    Arclength derivatives apply ``d/ds = |x'(theta)|^-1 d/dtheta`` once per order,
    re-interpolating in between so the product rule is honoured.
    """
    if not 1 <= order <= 3:
        msg = f"order must be between 1 and 3, got {order}"
        raise DomainError(msg)
    values = f.values
    for _ in range(order):
        values = trig_derivative(values, 1)
        if wrt == "s":
            values = values / f.grid.speed
    return BoundaryScalar(f.grid, values)


def trace_decompose(
    field: npt.ArrayLike, grid: BoundaryGrid
) -> tuple[npt.NDArray[np.complex128], npt.NDArray[np.complex128]]:
    """Split a boundary vector field ``E`` into ``n (n . E)`` and ``E - n (n . E)``."""
    values = np.asarray(field, dtype=np.complex128)
    if values.shape != (grid.n_nodes, 2):
        raise GridMismatchError(grid.n_nodes, values.shape[0])
    normals = grid.normals
    normal_part = normals * np.sum(normals * values, axis=-1)[:, None]
    return normal_part, values - normal_part
