from __future__ import annotations

from shapetaylor.lib.exceptions import DomainError

__all__ = ("SpecialFunctionDomainError",)


class SpecialFunctionDomainError(DomainError):
    """Raised when a cylinder function is requested outside its real domain."""

    def __init__(self, name: str, order: float, argument: float) -> None:
        msg = f"{name} is not defined for order={order!r} at argument={argument!r}"
        super().__init__(msg, order=order, argument=argument)
