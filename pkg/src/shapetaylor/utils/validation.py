from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from shapetaylor.lib.exceptions import DomainError

if TYPE_CHECKING:
    import numpy.typing as npt

__all__ = ("ensure_finite", "ensure_node_count")


def ensure_finite(name: str, values: npt.ArrayLike) -> None:
    """Raise a :class:`DomainError` naming ``name`` if any value is NaN or infinite."""
    if not np.all(np.isfinite(np.asarray(values))):
        msg = f"{name} must be finite"
        raise DomainError(msg, field=name)


def ensure_node_count(n_nodes: int, minimum: int = 16) -> None:
    """Quadrature grids need an even node count of at least ``minimum``."""
    if n_nodes < minimum or n_nodes % 2:
        msg = f"n_nodes must be an even integer >= {minimum}, got {n_nodes}"
        raise DomainError(msg, field="n_nodes")
