"""Exception types.  All validation errors derive from ValueError."""


class BraidError(ValueError):
    """Malformed braid word."""


class ParameterError(ValueError):
    """Angle or graph parameters outside the admissible range."""


class TruncationError(ParameterError):
    """Truncated path basis at a generic angle, where the trace identity fails."""


class StateSumTooLarge(ValueError):
    """Word too long for full state-sum enumeration."""
