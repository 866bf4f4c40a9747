"""Exception types shared across the package."""


class SolverError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SolverError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConvergenceError(SolverError):
    """A series failed to converge within its term budget."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class TermBlowupError(SolverError):
    """An exponential-sum operation exceeded the term-count cap."""


class InsufficientOrderError(SolverError, IndexError):
    """A spectrum was asked for a coefficient beyond its truncation order."""


class UnsupportedRepresentationError(SolverError):
    """The requested object falls outside the exponential-sum class."""


class NoOracleError(SolverError):
    """No closed-form reference solution exists for the requested setting."""


class EvaluationOverflowError(SolverError, OverflowError):
    """Pointwise evaluation overflowed double precision."""


class UsageError(SolverError, ValueError):
    """Invalid configuration or mismatched arguments."""


class OutputIOError(SolverError):
    """An artifact could not be written to disk."""
