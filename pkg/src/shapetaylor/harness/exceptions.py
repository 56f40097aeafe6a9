from __future__ import annotations

from shapetaylor.lib.exceptions import AccuracyError, DomainError

__all__ = ("InsufficientDataError", "OracleInconclusiveError")


class InsufficientDataError(DomainError):
    """Raised when too few samples survive for a convergence fit."""

    def __init__(self, usable: int, required: int) -> None:
        msg = f"Convergence fit needs at least {required} usable samples, got {usable}"
        super().__init__(msg, usable=usable, required=required)


class OracleInconclusiveError(AccuracyError):
    """Raised when a Richardson table does not settle within its tolerance."""

    def __init__(self, spread: float, tolerance: float) -> None:
        msg = (
            f"Finite-difference oracle is inconclusive: Richardson levels differ by "
            f"{spread:.3e} (tolerance {tolerance:.3e})"
        )
        super().__init__(msg, spread=spread, tolerance=tolerance)
