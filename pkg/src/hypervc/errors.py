class HypervcError(Exception):
    """Base class for every error raised by the package."""


class InputError(HypervcError, ValueError):
    """Malformed or out-of-range input (CLI exit code 1)."""


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GenerationError(InputError):
    """A generator could not satisfy the requested parameters."""


class BudgetExceeded(HypervcError):
    """Search stopped at its node budget; ``incumbent`` is the best cover found."""

    def __init__(self, message, incumbent=None, nodes_explored=0):
        super().__init__(message)
        self.incumbent = incumbent
        self.nodes_explored = nodes_explored


class InvariantViolation(HypervcError):
    """An internal guarantee failed at runtime (CLI exit code 3)."""
