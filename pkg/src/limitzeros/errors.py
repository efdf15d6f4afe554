"""Exception types shared across the package."""


class NoConvergence(RuntimeError):
    """An iterative solver did not reach its tolerance."""


class DomainError(ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class ConfigError(ValueError):
    """A configuration value is out of range."""


class ArityMismatch(ValueError):
    """Number of arguments does not match the number of weights."""


class EmptyInput(ValueError):
    pass


class TooLarge(ValueError):
    """Graph too large for exact enumeration."""


class PoleError(ZeroDivisionError):
    """A factor 1 + z vanished in the tree recursion."""


class DegreeOverflow(ValueError):
    """A constructed vertex would exceed the degree bound d + 1."""


class CertificationFailure(RuntimeError):
    """Strict invariance could not be confirmed numerically.

    ``min_clearance`` is the smallest clearance of a sampled boundary image
    found during the last attempt (negative means the image left the set).
    """

    def __init__(self, message, min_clearance=float("nan")):
        super().__init__(message)
        self.min_clearance = min_clearance
