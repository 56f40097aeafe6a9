from __future__ import annotations

from shapetaylor.lib.exceptions import AccuracyError, DomainError, UnsupportedError

__all__ = ("AssemblyError", "IncompleteJetError", "SweptRegionError", "UnsupportedOrderError")


class IncompleteJetError(DomainError):
    """Raised when a boundary jet entry needed by the data assembly is missing or not finite."""

    def __init__(self, entry: str) -> None:
        msg = f"Boundary jet entry {entry!r} is missing or not finite"
        super().__init__(msg, entry=entry)


class AssemblyError(AccuracyError):
    """Raised when second-order data are not symmetric in the two velocity fields."""

    def __init__(self, asymmetry: float) -> None:
        msg = f"Second-order boundary data are not symmetric (max difference {asymmetry:.3e})"
        super().__init__(msg, asymmetry=asymmetry)


class UnsupportedOrderError(UnsupportedError):
    """Raised for numeric shape derivatives beyond second order."""

    def __init__(self, order: int) -> None:
        msg = (
            f"Numeric shape derivatives stop at order 2 (got {order}); use "
            "`shapetaylor symbolic --order N` for the higher-order boundary data"
        )
        super().__init__(msg, order=order)


class SweptRegionError(DomainError):
    """Raised when an evaluation point may lie inside a perturbed obstacle."""

    def __init__(self, distance: float, sweep: float) -> None:
        msg = (
            f"Evaluation point at distance {distance:.3e} from the boundary lies in the "
            f"region swept by the perturbation ({sweep:.3e})"
        )
        super().__init__(msg, distance=distance, sweep=sweep)
