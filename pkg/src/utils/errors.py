from typing import Optional


class SeparabilityError(Exception):
    """Base class for every error raised by the package."""

    exit_code: int = 1


class DomainError(SeparabilityError):
    """An argument lies outside the domain of the requested operation."""

    exit_code = 1


class PoleError(DomainError):
    """A gamma function or Pochhammer symbol was asked for a value at a pole."""


class UnsupportedError(DomainError):
    """The request needs something this library does not evaluate (e.g. a catalog gap)."""


class ModeError(DomainError):
    """Exact evaluation was requested for a series that does not terminate."""


class SingularStepError(DomainError):
    """The leading recurrence polynomial vanished while stepping forward."""

    def __init__(self, alpha: int, message: Optional[str] = None):
        self.alpha = alpha
        super().__init__(message or f"p2({alpha}) = 0: recurrence cannot be stepped past alpha={alpha}")


class ConvergenceError(SeparabilityError):
    """A series diverges or its tail bound could not be driven below the target."""

    exit_code = 2


class OutputError(SeparabilityError):
    """Writing a result file failed."""

    exit_code = 3
