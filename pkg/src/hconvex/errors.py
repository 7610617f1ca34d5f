"""Exception hierarchy shared by all checkers."""


class HConvexError(Exception):
    """Base class for errors raised by this package."""


class DomainError(HConvexError, ValueError):
    """A point or spectrum falls outside the domain of a function."""


class DegenerateError(HConvexError, ValueError):
    """The instance is degenerate (e.g. an interval collapsed to a point)."""


class NonConvergenceError(HConvexError, ArithmeticError):
    """An iterative routine exhausted its depth or iteration budget."""


class DimensionError(HConvexError, ValueError):
    """Operand shapes do not agree."""


class NotHermitianError(HConvexError, ValueError):
    """Input matrix is not Hermitian within tolerance."""


class NonUnitalError(HConvexError, ValueError):
    """A positive map or map family fails its unitality requirement."""


class ConfigError(HConvexError, ValueError):
    """Invalid suite configuration or CLI arguments."""
