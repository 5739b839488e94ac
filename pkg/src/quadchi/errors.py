"""Exception types shared across the package."""


class QuadChiError(Exception):
    """Base class for all package-specific errors."""


class VariableMismatch(QuadChiError):
    """Operands live in different polynomial rings."""


class DegreeTooHigh(QuadChiError):
    """Input polynomial exceeds the supported degree bound."""


class NotHomogeneousQuadratic(QuadChiError):
    """Expected a homogeneous polynomial of degree exactly two (or zero)."""


class DimensionMismatch(QuadChiError):
    """Quadratic forms of different ambient dimensions were combined."""


class LengthMismatch(QuadChiError):
    """A sign condition has the wrong number of entries."""


class ResourceLimit(QuadChiError):
    """A configured resource cap was exceeded; the instance is beyond desk scale."""


class NoStabilization(QuadChiError):
    """An adaptive sweep ran out of iterations before two runs agreed."""


class OddHomogeneousChi(QuadChiError):
    """chi of a homogenized-plus-ball family came out odd (internal bug)."""


class ParseError(QuadChiError):
    """Problem-file or polynomial text could not be parsed."""

    def __init__(self, message, position=None, token=None):
        super().__init__(message)
        self.position = position
        self.token = token


class UnknownVariable(ParseError):
    """A polynomial mentions a variable that was not declared."""
