"""Exception types shared across the library.

The CLI maps ConfigError to exit code 2 and NumericalError (and subclasses)
to exit code 3.
"""


class ConfigError(ValueError):
    """Malformed or inconsistent experiment configuration."""


class NumericalError(RuntimeError):
    """Base class for numerical failures (non-convergence, bad inputs)."""


class EigensolverError(NumericalError):
    """Dense Hermitian eigensolver failed to converge."""


class ConvergenceError(NumericalError):
    """Cutoff ladder hit its cap before reaching the requested tolerance."""

    def __init__(self, message: str, last_delta: float):
        super().__init__(message)
        self.last_delta = last_delta


class InsufficientGridError(NumericalError):
    """Grid too coarse for the requested number of levels."""
