from __future__ import annotations

from shapetaylor.recursion.data import (
    DerivativeProblemData,
    Provenance,
    first_order_data,
    mixed_normal_closed_form,
    second_order_data,
)
from shapetaylor.recursion.exceptions import (
    AssemblyError,
    IncompleteJetError,
    SweptRegionError,
    UnsupportedOrderError,
)
from shapetaylor.recursion.remainder import (
    GridRemainderStudy,
    RemainderStudy,
    combined_field,
    grid_remainder_study,
    perturbed_scene,
    remainder_study,
)
from shapetaylor.recursion.scene import Scene, moved_scene, solve_scene
from shapetaylor.recursion.taylor import (
    TaylorRecord,
    shape_derivative_solve,
    taylor_evaluate,
    taylor_far_field,
)

__all__ = (
    "AssemblyError",
    "DerivativeProblemData",
    "GridRemainderStudy",
    "IncompleteJetError",
    "Provenance",
    "RemainderStudy",
    "Scene",
    "SweptRegionError",
    "TaylorRecord",
    "UnsupportedOrderError",
    "combined_field",
    "first_order_data",
    "grid_remainder_study",
    "mixed_normal_closed_form",
    "moved_scene",
    "perturbed_scene",
    "remainder_study",
    "second_order_data",
    "shape_derivative_solve",
    "solve_scene",
    "taylor_evaluate",
    "taylor_far_field",
)
