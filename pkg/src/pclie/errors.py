"""Exception hierarchy shared by the engines and the CLI."""


class PclieError(Exception):
    """Base class for all errors raised by this package."""


class InputError(PclieError, ValueError):
    """Malformed input: graph files, expressions, out-of-range indices."""


class ParseError(InputError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ContextMismatch(PclieError, ValueError):
    """Two elements from different algebras were combined."""


class CapExceeded(PclieError):
    """A requested computation is larger than the configured size cap."""


class InvariantViolation(PclieError, AssertionError):
    """An internal consistency check failed; results cannot be trusted."""
