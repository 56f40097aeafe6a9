from __future__ import annotations

import math
from enum import StrEnum

from shapetaylor.lib.config import Struct

__all__ = ("BoundaryKind", "Medium")


class BoundaryKind(StrEnum):
    """Boundary condition on the scatterer."""

    SOFT = "soft"
    HARD = "hard"
    IMPEDANCE = "impedance"
    TRANSMISSION = "transmission"


class Medium(Struct):
    """Coefficients of ``div(alpha grad u) + k^2 u = 0`` in and around the scatterer.

    ``alpha`` applies outside, ``alpha_inner`` inside (transmission only) and
    ``impedance`` is ``lambda`` in ``alpha d_n u + i lambda u = 0``.
    """

    alpha: float = 1.0
    alpha_inner: float = 1.0
    impedance: float = 0.0

    def exterior_wavenumber(self, k: float) -> float:
        return k / math.sqrt(self.alpha)

    def interior_wavenumber(self, k: float) -> float:
        return k / math.sqrt(self.alpha_inner)
