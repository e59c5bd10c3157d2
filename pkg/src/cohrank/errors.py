"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`CohRankError`, so callers can catch the whole family at once.
"""


class CohRankError(Exception):
    """Base class for all library errors."""


# exact arithmetic

class EndpointIsRoot(CohRankError, ValueError):
    """A Sturm count was requested on an interval whose endpoint is a root."""


# rank functions

class UnknownRegion(CohRankError, LookupError):
    """A value or germ was requested where the function is not known."""


class IncompleteFamily(CohRankError):
    """An operation needing every h^i everywhere met an incomplete family."""


class EulerMismatch(CohRankError):
    """The alternating sum of the h^i is not one polynomial."""

    def __init__(self, message, interval=None):
        super().__init__(message)
        self.interval = interval


class DiscontinuityError(CohRankError):
    """Two known one-sided limits disagree at a breakpoint."""


class NotCoprime(CohRankError, ValueError):
    """gcd(b, g!) != 1 in a divisibility check."""


class DivisibilityFailure(CohRankError):
    """b^{2g} h(a/b) is not an integer multiple of b^g."""


class DegreeTooHigh(CohRankError, ValueError):
    """A polynomial exceeds the degree cap g."""


# Fourier-Mukai layer

class LeadingMismatch(CohRankError):
    """The degree-g coefficients of the two transform germs differ."""


class DegreeOverflow(CohRankError):
    """A transformed segment would exceed degree g."""


# models

class BadParameters(CohRankError, ValueError):
    """Model parameters outside their documented range."""


class NotRealRooted(CohRankError, ValueError):
    """A line-bundle Hilbert polynomial has non-real roots."""


class SignViolation(CohRankError, ValueError):
    """A line-bundle Hilbert polynomial has the wrong sign on some interval."""


# regularity

class BetaBoundViolation(CohRankError):
    """An ideal-of-a-point h^1 function has support beyond 1."""


class InvalidBeta(CohRankError, ValueError):
    """beta > 1 was passed where beta <= 1 is required."""


class DegenerateDenominator(CohRankError, ZeroDivisionError):
    """s = beta / (h - beta) has a pole (h = beta = 1)."""


class UnboundedSupport(CohRankError):
    """The function does not vanish on any right tail."""


# model files

class ModelFileError(CohRankError, ValueError):
    """Problem reading a model file; carries the offending line number."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class ModelSyntaxError(ModelFileError):
    pass


class ModelValidationError(ModelFileError):
    pass
