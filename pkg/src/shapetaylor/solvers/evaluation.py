from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    import numpy as np
    import numpy.typing as npt

    from shapetaylor.solvers.base import ScatterSolution

__all__ = ("evaluate_field", "far_field")


def evaluate_field(
    solution: ScatterSolution, points: npt.ArrayLike, *, gradient: bool = False
) -> npt.NDArray[np.complex128]:
    """Scattered field, or its gradient, at exterior points.

    Nystrom solutions require each point to stay three node spacings away from the
    boundary; series solutions require points outside the circle.
    """
    return solution.evaluate(points, gradient=gradient)


def far_field(solution: ScatterSolution, angles: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """Far-field pattern at observation angles (radians)."""
    return solution.far_field(angles)
