"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "MeissnerError",
    "GeometryError",
    "NoIntersection",
    "ValidationError",
    "DiameterViolation",
    "NotExtremal",
    "WrongPairCount",
    "FaceCycleError",
    "TooManyPairs",
    "EmptySystem",
    "ParseError",
    "ValidationMismatch",
    "NotAWheel",
    "InfeasibleStart",
]


class MeissnerError(Exception):
    """Base class for every error raised by this package."""


class GeometryError(MeissnerError):
    """A geometric quantity left its admissible range beyond tolerance."""


class NoIntersection(GeometryError):
    """Two circles on the unit sphere do not intersect."""


class ValidationError(MeissnerError):
    """Input data failed validation.  The CLI maps this family to exit code 2."""


class DiameterViolation(ValidationError):
    """A pairwise distance or chord exceeds one beyond tolerance."""


class NotExtremal(ValidationError):
    """The number of unit-distance pairs differs from 2m - 2."""


class WrongPairCount(ValidationError):
    """Dual edge pair enumeration did not produce exactly m - 1 pairs."""


class FaceCycleError(ValidationError):
    """The neighbors of a vertex admit no unambiguous cyclic order."""


class TooManyPairs(ValidationError):
    """Exhaustive smoothing enumeration was requested for too many pairs."""


class EmptySystem(ValidationError):
    """A ball system without point centers cannot be sampled."""


class ParseError(ValidationError):
    """A vertex file is malformed."""


class ValidationMismatch(ValidationError):
    """Edges declared in a vertex file disagree with the computed graph."""


class NotAWheel(ValidationError):
    """The diameter graph is not a wheel, so pyramid analysis does not apply."""


class InfeasibleStart(ValidationError):
    """An optimization start violates the distance constraints too strongly."""
