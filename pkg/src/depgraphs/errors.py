"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """An operation exceeded its declared enumeration or size budget.

    Raised instead of silently degrading to an approximation; callers that
    want an estimate should use the Monte Carlo harness.
    """
