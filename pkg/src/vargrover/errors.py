class InvariantViolation(RuntimeError):
    """A computed quantity broke a numerical invariant (norm, trace, consistency)."""
