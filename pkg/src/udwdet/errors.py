"""Exception types shared across the package."""


class UdwError(Exception):
    """Base class for all package errors."""


class DomainError(UdwError):
    """Input outside the mathematical domain of an operation."""


class NonPositiveInputError(DomainError):
    """A strictly positive quantity (mass, frequency, coupling) was not."""


class OverDampedError(DomainError):
    """gamma^2 >= Omega_r^2; only the under-damped oscillator is supported."""


class UndefinedRetardedTimeError(DomainError):
    """Retarded proper time does not exist for the given field point."""


class PoleError(DomainError):
    """Evaluation exactly on (or too close to) a pole of a special function."""


class ConvergenceError(UdwError):
    """A series or iteration failed to reach the requested tolerance."""


class QuadratureFailure(UdwError):
    """Adaptive quadrature could not meet its tolerance within budget."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class UnknownFigureError(UdwError):
    """Unrecognized figure identifier."""
