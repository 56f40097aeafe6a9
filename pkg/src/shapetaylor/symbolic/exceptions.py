from __future__ import annotations

from shapetaylor.lib.exceptions import ShapeTaylorError, UnsupportedError

__all__ = ("DegreeError", "UnsupportedProxyError")


class DegreeError(ShapeTaylorError, TypeError):
    """Raised when an operator is applied to a form of the wrong degree."""

    def __init__(self, operator: str, degree: int | None, dim: int | None) -> None:
        msg = f"{operator} cannot act on a {degree}-form in dimension {dim}"
        super().__init__(msg, operator=operator, degree=degree, dim=dim)


class UnsupportedProxyError(UnsupportedError):
    """Raised when an expression has no vector proxy in the requested setting."""

    def __init__(self, node: str, dim: int, degree: int) -> None:
        msg = f"No vector proxy for {node} with d={dim}, l={degree}"
        super().__init__(msg, node=node, dim=dim, degree=degree)
