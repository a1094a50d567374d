"""Exception hierarchy shared by every module."""


class QSchubError(Exception):
    """Base class for all errors raised by the package."""


class ParseError(QSchubError, ValueError):
    """Malformed textual input. ``pos`` is the offending character offset."""

    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class PreconditionError(QSchubError, ValueError):
    """An argument violates a documented precondition."""


class RingMismatchError(PreconditionError):
    """Integer-ring and q-ring operands were mixed."""


class NotDivisibleError(PreconditionError):
    """Exact division was requested but the divisor does not divide."""


class BoundExceededError(PreconditionError):
    """An enumeration was asked to go beyond its configured size bound."""


class VerificationError(QSchubError):
    """An internal consistency check failed."""
