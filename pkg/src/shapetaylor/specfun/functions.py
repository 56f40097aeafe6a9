"""Bessel and Hankel functions of integer order and real argument.

Values come from :mod:`scipy.special` (ascending series, Miller recurrence and
asymptotic expansions, selected by argument range). This module adds the domain
checks, the parity rule for negative orders and the derivative identities the
solvers rely on.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Literal

import msgspec
import numpy as np
from scipy import special

from .exceptions import SpecialFunctionDomainError

if TYPE_CHECKING:
    import numpy.typing as npt

__all__ = (
    "BesselKind",
    "CylEval",
    "bessel_derivative",
    "cyl_bessel",
    "cyl_bessel_prime",
    "cyl_eval",
    "hankel1",
    "hankel1_derivative",
    "hankel1_prime",
)

type BesselKind = Literal["J", "Y"]
type RealValues = np.float64 | npt.NDArray[np.float64]
type ComplexValues = np.complex128 | npt.NDArray[np.complex128]


class CylEval(msgspec.Struct, frozen=True, kw_only=True):
    """Values of J_n, Y_n and their argument derivatives at one point."""

    order: int
    argument: float
    j: float
    y: float
    jp: float
    yp: float

    @property
    def wronskian(self) -> float:
        """``J_n Y_n' - J_n' Y_n``, equal to ``2 / (pi x)``."""
        return self.j * self.yp - self.jp * self.y


def _orders(n: npt.ArrayLike) -> npt.NDArray[np.int64]:
    orders = np.asarray(n)
    if not np.issubdtype(orders.dtype, np.integer):
        rounded = np.rint(orders)
        if not np.all(rounded == orders):
            raise SpecialFunctionDomainError("cylinder function", float(np.ravel(orders)[0]), 0.0)
        orders = rounded
    return orders.astype(np.int64)


def _arguments(name: str, n: npt.NDArray[np.int64], x: npt.ArrayLike, *, positive: bool) -> npt.NDArray[np.float64]:
    args = np.asarray(x, dtype=np.float64)
    bad = ~np.isfinite(args)
    if positive:
        bad |= args <= 0.0
    if np.any(bad):
        order, arg = np.broadcast_arrays(n, args)
        raise SpecialFunctionDomainError(name, int(order[bad].flat[0]), float(arg[bad].flat[0]))
    return args


def _parity(n: npt.NDArray[np.int64]) -> npt.NDArray[np.float64]:
    # J_{-n} = (-1)^n J_n, Y_{-n} = (-1)^n Y_n
    return np.where((n < 0) & (n % 2 == 1), -1.0, 1.0)


def cyl_bessel(kind: BesselKind, n: npt.ArrayLike, x: npt.ArrayLike) -> RealValues:
    """Evaluate ``J_n(x)`` or ``Y_n(x)`` for integer ``n``.

    Parameters
    ----------
    kind : {"J", "Y"}
        First or second kind.
    n : array_like of int
        Orders; negative orders are resolved by the parity relation.
    x : array_like of float
        Arguments. ``Y`` requires ``x > 0``; both require finite values.

    Returns
    -------
    numpy.float64 or numpy.ndarray
        The function values, broadcast over ``n`` and ``x``.
    """
    orders = _orders(n)
    args = _arguments(f"{kind}_n", orders, x, positive=kind == "Y")
    base = special.jv if kind == "J" else special.yv
    return _parity(orders) * base(np.abs(orders), args)


def bessel_derivative(
    kind: BesselKind, n: npt.ArrayLike, x: npt.ArrayLike, order: int = 1
) -> RealValues:
    """Evaluate the ``order``-th argument derivative of ``J_n`` or ``Y_n``."""
    if order == 0:
        return cyl_bessel(kind, n, x)
    orders = _orders(n)
    args = _arguments(f"{kind}_n", orders, x, positive=kind == "Y")
    base = special.jvp if kind == "J" else special.yvp
    return _parity(orders) * base(np.abs(orders), args, order)


def cyl_bessel_prime(kind: BesselKind, n: npt.ArrayLike, x: npt.ArrayLike) -> RealValues:
    """First derivative from ``f_n' = f_{n-1} - (n / x) f_n``."""
    orders = _orders(n)
    args = _arguments(f"{kind}_n", orders, x, positive=True)
    return cyl_bessel(kind, orders - 1, args) - (orders / args) * cyl_bessel(kind, orders, args)


def hankel1(n: npt.ArrayLike, x: npt.ArrayLike) -> ComplexValues:
    """Hankel function of the first kind, assembled as ``J_n + i Y_n``."""
    return cyl_bessel("J", n, x) + 1j * cyl_bessel("Y", n, x)


def hankel1_prime(n: npt.ArrayLike, x: npt.ArrayLike) -> ComplexValues:
    """Derivative ``H_n' = H_{n-1} - (n / x) H_n``."""
    orders = _orders(n)
    args = _arguments("H_n", orders, x, positive=True)
    return hankel1(orders - 1, args) - (orders / args) * hankel1(orders, args)


def hankel1_derivative(n: npt.ArrayLike, x: npt.ArrayLike, order: int = 1) -> ComplexValues:
    """``order``-th argument derivative of ``H_n``, built from the real parts."""
    if order == 0:
        return hankel1(n, x)
    return bessel_derivative("J", n, x, order) + 1j * bessel_derivative("Y", n, x, order)


def cyl_eval(n: int, x: float) -> CylEval:
    """Collect ``J``, ``Y`` and their first derivatives at a single point."""
    return CylEval(
        order=n,
        argument=x,
        j=float(cyl_bessel("J", n, x)),
        y=float(cyl_bessel("Y", n, x)),
        jp=float(cyl_bessel_prime("J", n, x)),
        yp=float(cyl_bessel_prime("Y", n, x)),
    )
