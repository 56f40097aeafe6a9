"""Extended-precision reference values for the special-function and jet tests.

Slow on purpose: every value is summed term by term in ``mpmath`` arithmetic.
"""

from __future__ import annotations

import mpmath

__all__ = ("besselj_series", "bessely_reference", "hankel0_point_source_jet")

_DPS = 80


def besselj_series(n: int, x: float) -> float:
    """``J_n(x)`` from its Maclaurin series, summed until terms fall below 1e-70."""
    with mpmath.workdps(_DPS):
        order = abs(n)
        half = mpmath.mpf(x) / 2
        term = half**order / mpmath.factorial(order)
        total = term
        k = 0
        while abs(term) > mpmath.mpf(10) ** (-70) * max(abs(total), 1) or k < order + 2:
            k += 1
            term *= -(half**2) / (k * (k + order))
            total += term
        value = total if n >= 0 or n % 2 == 0 else -total
        return float(value)


def bessely_reference(n: int, x: float) -> float:
    """``Y_n(x)`` in extended precision."""
    with mpmath.workdps(_DPS):
        return float(mpmath.bessely(n, mpmath.mpf(x)))


def hankel0_point_source_jet(
    k: float, source: tuple[float, float], point: tuple[float, float], normal: tuple[float, float]
) -> dict[str, complex]:
    """Directional derivatives of ``H_0(k |x - x0|)`` along ``normal`` at ``point``.

    Returns the value and the first three derivatives along the straight normal
    line ``point + nu * normal``.
    """
    with mpmath.workdps(30):

        def along(nu: mpmath.mpf) -> mpmath.mpc:
            px = point[0] + nu * normal[0] - source[0]
            py = point[1] + nu * normal[1] - source[1]
            return mpmath.hankel1(0, k * mpmath.sqrt(px**2 + py**2))

        return {
            f"d{order}": complex(mpmath.diff(along, 0, order)) for order in range(4)
        }
