class LptError(Exception):
    """Base class for all errors raised by lptkit."""


class InputError(LptError, ValueError):
    """Malformed input or a violated precondition."""


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OracleInfeasible(LptError, RuntimeError):
    """The exact oracle refuses an instance that exceeds its size caps."""


class BoundViolation(LptError, AssertionError):
    """A checked bound failed; carries the offending witness."""

    def __init__(self, check_id, message, witness=None):
        self.check_id = check_id
        self.witness = witness or {}
        super().__init__(f"{check_id}: {message}")


class InternalError(LptError, RuntimeError):
    """A construction produced output that its own validator rejects."""

    def __init__(self, message, witness=None):
        self.witness = witness or {}
        super().__init__(message)
