"""Shared error types and enumeration caps."""

from __future__ import annotations

import os

# Default bound on element-store materialisation.  Deliberately conservative:
# groups past this size must be handled through orbit methods or
# direct-factor shortcuts, never by enumeration.
DEFAULT_ENUMERATION_CAP = 5_000_000

# Default bound on a single conjugacy-orbit walk.
DEFAULT_CLASS_ORBIT_CAP = 1_000_000

# Orders up to this bound get an integer Cayley table for fast id-level
# subgroup arithmetic; direct products past it are handled componentwise.
CAYLEY_TABLE_MAX_ORDER = 2400


def enumeration_cap() -> int:
    """Default element-store cap; the BAERLAB_CAP env var overrides it."""
    raw = os.environ.get("BAERLAB_CAP")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"BAERLAB_CAP must be an integer, got {raw!r}") from None
    return DEFAULT_ENUMERATION_CAP


class CapExceeded(RuntimeError):
    """An enumeration or orbit walk outgrew its cap.

    ``partial`` carries the number of elements seen before giving up, so
    callers can report how far the walk got.
    """

    def __init__(self, message: str, *, cap: int | None = None, partial: int | None = None):
        super().__init__(message)
        self.cap = cap
        self.partial = partial


class InternalInvariantViolation(RuntimeError):
    """A conclusion that is guaranteed to hold has failed.

    Raised when a search that must succeed comes up empty or a uniqueness
    guarantee breaks.  Never swallowed: it means the engine has a bug, not
    that the input is unusual.
    """
