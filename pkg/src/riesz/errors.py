"""Exception hierarchy shared across the package."""


class RieszError(Exception):
    """Base class for every error raised by this package."""


class InvalidField(RieszError, ValueError):
    pass


class ReducibleField(RieszError, ArithmeticError):
    """Inversion met a nontrivial common factor with the minimal polynomial."""


class DivisionByZero(RieszError, ZeroDivisionError):
    pass


class PrecisionCap(RieszError):
    """Root refinement exceeded the configured bisection depth."""


class NotAMember(RieszError, ValueError):
    pass


class ProperIntersection(RieszError, ValueError):
    pass


class NoSuperideal(RieszError, ValueError):
    pass


class BadCoords(RieszError, ValueError):
    pass


class NotDense(RieszError):
    pass


class SearchBudget(RieszError):
    pass


class NotComparable(RieszError, ValueError):
    pass


class ConditionsFail(RieszError):
    pass


class InternalProofGap(RieszError):
    """The constructive interpolant could not be verified.

    ``trace`` holds every intermediate quantity so the instance can be
    replayed.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace or {}


class TooLarge(RieszError, ValueError):
    pass


class ModeMismatch(RieszError, ValueError):
    pass


class DimensionMismatch(RieszError, ValueError):
    pass


class ParseError(RieszError, ValueError):
    pass
