"""Exception types shared across the package."""


class LeibnizError(Exception):
    """Base class for all package errors."""


class DivisionByZero(LeibnizError, ZeroDivisionError):
    pass


class FactorialNotInvertible(LeibnizError):
    def __init__(self, p, k):
        super().__init__(f"{k}! is not invertible in F_{p}")
        self.p = p
        self.k = k


class NotPrime(LeibnizError, ValueError):
    pass


class DimensionMismatch(LeibnizError, ValueError):
    pass


class FieldTooSmall(LeibnizError, ValueError):
    pass


class NTooSmall(LeibnizError, ValueError):
    pass


class NTooSmallForProbes(NTooSmall):
    pass


class NotNilpotent(LeibnizError, ValueError):
    pass


class InvalidParams(LeibnizError, ValueError):
    pass


class BudgetExceeded(LeibnizError, RuntimeError):
    pass


class UnsupportedPoint(LeibnizError, ValueError):
    pass


class AnchorFailure(LeibnizError):
    def __init__(self, point, anchor):
        super().__init__(f"no automorphism agrees with the map at {point} and {anchor}")
        self.point = point
        self.anchor = anchor


class ParseError(LeibnizError, ValueError):
    """Malformed input; `where` names the offending position."""

    def __init__(self, message, where=None):
        super().__init__(f"{where}: {message}" if where else message)
        self.message = message
        self.where = where
