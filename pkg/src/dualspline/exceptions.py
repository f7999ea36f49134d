class ConditioningError(ArithmeticError):
    """A construction is too ill-conditioned to give a trustworthy result."""
