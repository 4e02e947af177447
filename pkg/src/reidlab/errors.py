"""Exception hierarchy shared by every reidlab module."""


class ReidLabError(Exception):
    """Base class for all errors raised by reidlab."""


class DimensionMismatch(ReidLabError, ValueError):
    pass


class BadDimension(ReidLabError, ValueError):
    pass


class NotHermitian(ReidLabError, ValueError):
    pass


class NotPositive(ReidLabError, ValueError):
    pass


class OrderViolated(ReidLabError, ValueError):
    """Raised when a Loewner-order precondition ``X <= Y`` does not hold."""


class NumericalFailure(ReidLabError, ArithmeticError):
    """An eigensolver or linear solve failed, or a post-check did not pass."""
