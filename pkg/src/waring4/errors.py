"""Shared exception types."""


class BudgetError(Exception):
    """Raised when a requested exact computation exceeds its operation budget."""
