"""Exception types shared across the package."""


class OttoError(Exception):
    """Base class for all package errors."""


class ConstraintViolation(OttoError):
    """A matrix failed the structural check for its declared role."""


class DomainError(OttoError, ValueError):
    """An argument fell outside its valid domain."""


class UnitarityError(OttoError):
    """Two expressions that unitarity forces to agree did not."""


class ConvergenceError(OttoError):
    """Step doubling exhausted its budget; carries the best estimate."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
