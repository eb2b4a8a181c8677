"""Exceptions shared across the package."""


class InputError(ValueError):
    """Invalid user-supplied data. Carries a machine-readable code and field."""

    def __init__(self, code: str, field: str, message: str):
        super().__init__(message)
        self.code = code
        self.field = field
        self.message = message


class ConvergenceError(RuntimeError):
    """Requested quantity lies outside the convergent regime."""
