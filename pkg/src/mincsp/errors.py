"""Exception types shared across the package."""


class MalformedRelation(ValueError):
    pass


class ParseError(ValueError):
    """Raised by every text-format parser; carries the 1-based line number."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class MalformedInstance(ValueError):
    pass


class InstanceTooLarge(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class InternalInconsistency(RuntimeError):
    """Two independent decision mechanisms disagreed (an implementation bug)."""


class InfeasibleSource(Exception):
    """The source instance of a reduction has no feasible solution."""
