"""Exception hierarchy shared by all modules."""


class ITEError(Exception):
    """Base class for errors raised by itespec."""


class DomainError(ITEError, ValueError):
    """An argument lies outside the domain of the requested function."""


class PreconditionError(ITEError, ValueError):
    """An operation was called on input violating its precondition."""


class NumericalError(ITEError, RuntimeError):
    """A numerical procedure failed to converge or produced unusable values."""

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics

    def __str__(self):
        base = super().__str__()
        if not self.diagnostics:
            return base
        extra = ", ".join(f"{k}={v!r}" for k, v in self.diagnostics.items())
        return f"{base} ({extra})"
