"""Exception types shared across the package.

The CLI maps these onto exit codes, so keep the hierarchy shallow.
"""


class PolyharmError(Exception):
    """Base class for all package errors."""


class DomainError(PolyharmError, ValueError):
    """A point or parameter lies outside the admissible range."""


class DegenerateError(PolyharmError, ArithmeticError):
    """A quotient has a (numerically) vanishing denominator."""


class IllConditionedError(PolyharmError, ArithmeticError):
    """The reference point is too close to the curve for a winding number."""


class CurveTooCoarseError(PolyharmError, ArithmeticError):
    """Per-segment angle increments stay too large even after refinement."""


class MapSpecError(PolyharmError, ValueError):
    """A map-specification file could not be parsed or validated."""
