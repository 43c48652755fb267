"""Exception types raised across the package."""


class WeylBoundsError(Exception):
    """Base class for all errors raised by weylbounds."""


class DomainError(WeylBoundsError, ValueError):
    """An argument lies outside the domain of a function (e.g. x < 0 for J_nu)."""


class DimensionError(WeylBoundsError, ValueError):
    """Spatial dimension below 2."""


class PreconditionError(WeylBoundsError, ValueError):
    """A documented precondition on the arguments does not hold."""


class ConvergenceError(WeylBoundsError, RuntimeError):
    """An iterative routine failed to bracket or converge."""


class BudgetExceededError(WeylBoundsError, RuntimeError):
    """Spectrum enumeration would exceed the configured memory budget."""
