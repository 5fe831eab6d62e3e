"""Exception types shared across the package."""


class CayleyLabError(Exception):
    """Base class for package errors."""


class GroupError(CayleyLabError, ValueError):
    """Invalid group construction input (bad spec, bad generators, caps)."""


class CapExceededError(GroupError):
    """Requested object is larger than the configured size cap."""


class ValidationError(CayleyLabError):
    """A structural invariant that must hold by construction failed."""


class ConvergenceError(CayleyLabError, RuntimeError):
    """An iterative numerical procedure did not converge.

    Carries the last achieved residual so callers can report how close the
    iteration got before hitting its cap.
    """

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class DegenerateSpectrumError(ConvergenceError):
    """Eigenvalue clustering failed to produce a valid degree multiset."""
