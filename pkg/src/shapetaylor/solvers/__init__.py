from __future__ import annotations

from shapetaylor.solvers.base import (
    BoundaryData,
    ScatterSolution,
    boundary_data_from_jet,
    incident_data,
    transmission_jumps,
)
from shapetaylor.solvers.evaluation import evaluate_field, far_field
from shapetaylor.solvers.exceptions import (
    AccuracyGuardError,
    ModeTruncationWarning,
    NearResonanceError,
    UnsupportedBoundaryError,
)
from shapetaylor.solvers.incident import IncidentField, IncidentKind
from shapetaylor.solvers.models import BoundaryKind, Medium
from shapetaylor.solvers.nystrom import (
    NystromSolution,
    NystromSolver,
    layer_matrices,
    nystrom_scatter,
    nystrom_solve,
)
from shapetaylor.solvers.series import (
    SeriesSolution,
    default_mode_count,
    series_solve,
    series_solve_data,
)

__all__ = (
    "AccuracyGuardError",
    "BoundaryData",
    "BoundaryKind",
    "IncidentField",
    "IncidentKind",
    "Medium",
    "ModeTruncationWarning",
    "NearResonanceError",
    "NystromSolution",
    "NystromSolver",
    "ScatterSolution",
    "SeriesSolution",
    "UnsupportedBoundaryError",
    "boundary_data_from_jet",
    "default_mode_count",
    "evaluate_field",
    "far_field",
    "incident_data",
    "layer_matrices",
    "nystrom_scatter",
    "nystrom_solve",
    "series_solve",
    "series_solve_data",
    "transmission_jumps",
)
