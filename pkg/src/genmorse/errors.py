"""Exception types raised across the package."""


class GmpError(Exception):
    """Base class for all package errors."""


class DomainError(GmpError, ValueError):
    """An argument lies outside the region where a formula is defined."""


class LevelIndexError(GmpError, IndexError):
    """Requested level index is not a bound state of the model."""


class LabelError(GmpError, ValueError):
    """An (l, m, g) triple does not label a bound state."""


class StepError(GmpError, ValueError):
    """A satellite step leaves the physical parameter domain."""


class SingularityError(GmpError, ValueError):
    """Partner parameters are singular (kb == l)."""


class NoEigenvalueError(GmpError, RuntimeError):
    """Node-count bracketing found no eigenvalue of the requested index."""


class ConvergenceError(GmpError, RuntimeError):
    """An iterative numerical routine hit its iteration or subdivision cap."""
