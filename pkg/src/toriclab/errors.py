"""Shared failure types for guard rails and internal consistency checks."""

from __future__ import annotations


class ScaleGuardError(RuntimeError):
    """Input exceeds the default size budget; callers may override with force."""


class InternalInvariantError(RuntimeError):
    """A structural property the implementation relies on was violated."""
