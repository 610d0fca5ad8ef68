"""Exception types raised by robin_ball."""


class RobinError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(RobinError, ValueError):
    """An argument lies outside the supported domain."""


class BesselOverflowError(RobinError, OverflowError):
    """An unscaled modified Bessel value exceeds the floating-point range."""


class ConvergenceError(RobinError, ArithmeticError):
    """An iterative method failed to settle."""


class BranchError(RobinError, ValueError):
    """The requested eigenvalue branch does not exist for this Robin parameter."""


class PoleError(RobinError, ZeroDivisionError):
    """A branch function was evaluated at (or too close to) one of its poles."""


class RatioUndefinedError(RobinError, ZeroDivisionError):
    """mu2/mu1 requested where the first eigenvalue vanishes."""
