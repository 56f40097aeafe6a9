from __future__ import annotations

from shapetaylor.geometry.curves import ClosedCurve, NormalSpeedField, StarCurve, circle
from shapetaylor.geometry.exceptions import (
    DegenerateCurveError,
    NormalDerivativeAccuracyError,
    PerturbationTooLargeError,
)
from shapetaylor.geometry.flow import (
    compose_offsets,
    normal_shape_derivative,
    offset_curve,
    reach_limit,
)
from shapetaylor.geometry.grid import BoundaryGrid, as_complex, as_pairs, build_grid

__all__ = (
    "BoundaryGrid",
    "ClosedCurve",
    "DegenerateCurveError",
    "NormalDerivativeAccuracyError",
    "NormalSpeedField",
    "PerturbationTooLargeError",
    "StarCurve",
    "as_complex",
    "as_pairs",
    "build_grid",
    "circle",
    "compose_offsets",
    "normal_shape_derivative",
    "offset_curve",
    "reach_limit",
)
