from __future__ import annotations

from shapetaylor.boundary_calculus.exceptions import GridMismatchError
from shapetaylor.boundary_calculus.jets import BoundaryJet, build_jet, jet_from_cartesian
from shapetaylor.boundary_calculus.scalars import (
    BoundaryScalar,
    Variable,
    spectral_derivative,
    trace_decompose,
)

__all__ = (
    "BoundaryJet",
    "BoundaryScalar",
    "GridMismatchError",
    "Variable",
    "build_jet",
    "jet_from_cartesian",
    "spectral_derivative",
    "trace_decompose",
)
