"""Exception types shared across the package."""


class DomainError(ValueError):
    """Bad input or parameters outside an operation's contract."""


class DisconnectedGraphError(DomainError):
    """Raised when an operation needs a connected graph."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed (a bug, not bad input)."""
