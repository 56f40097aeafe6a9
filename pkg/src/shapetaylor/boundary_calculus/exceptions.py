from __future__ import annotations

from shapetaylor.lib.exceptions import DomainError

__all__ = ("GridMismatchError",)


class GridMismatchError(DomainError):
    """Raised when boundary samples do not live on the expected grid."""

    def __init__(self, expected: int, got: int) -> None:
        msg = f"Boundary samples do not match the grid: expected {expected} nodes, got {got}"
        super().__init__(msg, expected=expected, got=got)
