"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Bad caller input: unknown family, rank out of range, malformed data.

    ``field`` names the offending argument so front ends can report it.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class ConsistencyError(RuntimeError):
    """An internal identity that must hold did not.

    Both sides of the failed identity are kept on the exception.
    """

    def __init__(self, message, lhs=None, rhs=None):
        super().__init__(f"{message}: {lhs!r} != {rhs!r}")
        self.lhs = lhs
        self.rhs = rhs
