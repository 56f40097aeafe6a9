from __future__ import annotations

from shapetaylor.lib.exceptions import AccuracyError, UnsupportedError

__all__ = (
    "AccuracyGuardError",
    "ModeTruncationWarning",
    "NearResonanceError",
    "UnsupportedBoundaryError",
)


class NearResonanceError(AccuracyError):
    """Raised when the boundary-integral system is too ill-conditioned to trust."""

    def __init__(self, condition: float, k: float) -> None:
        msg = (
            f"Integral equation is near-singular at k={k:g} (condition number "
            f"{condition:.3e}); try a different wavenumber"
        )
        super().__init__(msg, condition=condition, k=k)


class AccuracyGuardError(AccuracyError):
    """Raised when evaluation points are too close to the boundary for the trapezoid rule."""

    def __init__(self, distance: float, required: float) -> None:
        msg = (
            f"Evaluation point lies {distance:.3e} from the boundary; at least "
            f"{required:.3e} is required"
        )
        super().__init__(msg, distance=distance, required=required)


class UnsupportedBoundaryError(UnsupportedError):
    """Raised when a backend cannot handle the requested boundary condition or geometry."""

    def __init__(self, bc: str, backend: str) -> None:
        msg = f"Boundary condition {bc!r} is not supported by the {backend} backend"
        super().__init__(msg, bc=bc, backend=backend)


class ModeTruncationWarning(RuntimeWarning):
    """Emitted when Hankel values overflow and high modes are dropped from a series."""
