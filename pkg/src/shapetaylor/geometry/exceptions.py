from __future__ import annotations

from shapetaylor.lib.exceptions import AccuracyError, DomainError

__all__ = (
    "DegenerateCurveError",
    "NormalDerivativeAccuracyError",
    "PerturbationTooLargeError",
)


class DegenerateCurveError(DomainError):
    """Raised when the parameterisation of a curve has a vanishing Jacobian."""

    def __init__(self, min_speed: float) -> None:
        msg = f"Curve Jacobian vanishes (min |x'(theta)| = {min_speed:.3e})"
        super().__init__(msg, min_speed=min_speed)


class PerturbationTooLargeError(DomainError):
    """Raised when a normal offset leaves the tubular neighbourhood of the curve."""

    def __init__(self, t: float, max_speed: float, reach: float) -> None:
        msg = (
            f"Offset t={t:.3e} with max|v|={max_speed:.3e} exceeds the reach guard "
            f"{reach:.3e}"
        )
        super().__init__(msg, t=t, max_speed=max_speed, reach=reach)


class NormalDerivativeAccuracyError(AccuracyError):
    """Raised when the Richardson table for the mixed normal derivative does not settle."""

    def __init__(self, residual: float) -> None:
        msg = f"Mixed normal derivative did not converge (Richardson residual {residual:.3e})"
        super().__init__(msg, residual=residual)
