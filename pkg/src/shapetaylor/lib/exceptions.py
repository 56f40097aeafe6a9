from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from typing import Any


__all__ = (
    "AccuracyError",
    "ApplicationError",
    "ConfigError",
    "DomainError",
    "ShapeTaylorError",
    "UnsupportedError",
)


class ApplicationError(Exception):
    """Base error class for all application errors."""


class ShapeTaylorError(ApplicationError):
    """Numerical or symbolic pipeline error.

    Parameters
    ----------
    *args : Any
        Positional arguments passed to the base ``ApplicationError``.
        If ``detail`` is not provided first arg should be error detail.
    detail : str, optional
        A human-readable explanation specific to this occurrence. Defaults
        to the first positional argument if not provided.
    **extension : Any
        Additional context (parameter values, residuals) kept for reports.
    """

    detail: str | None
    extension: dict[str, Any]

    def __init__(self, *args: Any, detail: str | None = None, **extension: Any) -> None:
        self.detail = detail or (args[0] if args else None)
        self.extension = extension

        super().__init__(*args)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__} - {self.detail}"


class ConfigError(ShapeTaylorError):
    """Raised when a run configuration is missing or invalid."""


class DomainError(ShapeTaylorError):
    """Raised when a numeric input lies outside the domain of an operation."""


class AccuracyError(ShapeTaylorError):
    """Raised when an accuracy guard or a convergence check fails."""


class UnsupportedError(ShapeTaylorError):
    """Raised when a request is outside the implemented scope."""
