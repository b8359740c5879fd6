"""Exception types shared across modules."""


class CapExceeded(RuntimeError):
    """An enumeration would exceed its configured cap."""


class CrossCheckError(AssertionError):
    """Two independent computations of the same quantity disagree."""
