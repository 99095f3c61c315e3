"""Exception hierarchy shared by all zerocap modules."""


class ZocError(Exception):
    """Base class for every error raised by zerocap."""


class DomainError(ZocError, ValueError):
    """An argument lies outside the domain of the operation."""


class NoSignChange(ZocError, ValueError):
    """The bracket endpoints do not straddle a root."""


class NoConvergence(ZocError, RuntimeError):
    """An iterative solver exhausted its iteration budget."""


class InvalidInterval(ZocError, ValueError):
    """Interval bounds are reversed."""


class NonFinite(ZocError, ArithmeticError):
    """A function produced NaN or infinite values where finite ones are required."""


class InfiniteQuantile(DomainError):
    """quantile(1) was requested; the supremum of the support is infinite."""


class EmptyZeroSet(ZocError):
    """The copula places positive mass everywhere near the origin."""


class DegenerateQuantile(ZocError, ArithmeticError):
    """A quantile needed as a divisor evaluated to zero."""


class DimensionMismatch(ZocError, ValueError):
    """Number of marginals does not match the copula dimension."""
