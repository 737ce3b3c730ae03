"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or invalid user-supplied data (CLI exit code 2)."""


class InternalError(RuntimeError):
    """A verified-by-construction invariant failed (CLI exit code 3)."""


class BudgetError(RuntimeError):
    """An enumeration would exceed the configured size ceiling."""


class CoefficientSystemError(RuntimeError):
    """The near-pencil coefficient system is unsolvable or its solution
    fails verification; carries the offending linear system."""

    def __init__(self, message, rows=None):
        super().__init__(message)
        self.rows = rows
