from __future__ import annotations

from typing import TYPE_CHECKING

import msgspec

if TYPE_CHECKING:
    from typing import Any

__all__ = ("Struct",)


# Report structs reference lists and dicts, so unlike scalar-only schemas they keep
# garbage collection enabled.
class Struct(msgspec.Struct, kw_only=True):
    """Base schemas struct for reports and artefacts."""

    def to_dict(self) -> dict[str, Any]:
        """Convert the struct to a dictionary."""
        return msgspec.to_builtins(self)
