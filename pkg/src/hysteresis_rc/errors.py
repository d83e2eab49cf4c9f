class DomainError(ValueError):
    """Input outside the domain of an operation (non-finite, out of range, degenerate)."""
