"""Exception hierarchy shared by the solver, the oracles and the CLI."""


class BalcutError(Exception):
    """Base class for all package errors."""


class GsetParseError(BalcutError, ValueError):
    """Raised when a G-set file is malformed. Carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(BalcutError, ValueError):
    """Argument outside the domain of a function (e.g. a constant cut vector)."""


class PartitionError(BalcutError, ValueError):
    """Invalid binary cut or ternary partition."""


class ContractViolation(BalcutError, RuntimeError):
    """A precondition that the iteration guarantees in exact arithmetic failed."""


class SizeGuardError(BalcutError, ValueError):
    """Instance too large for exhaustive enumeration."""
