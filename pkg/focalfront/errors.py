"""
FocalFront - Errors

Every failure raised by the library derives from FocalFrontError so callers
(CLI, API) can map the whole family to one exit status / status code.
"""

from typing import Any


class FocalFrontError(Exception):
    """Base class for analysis failures."""

    def __init__(self, message: str, provenance: str = "", **details: Any):
        super().__init__(message)
        self.message = message
        self.provenance = provenance
        self.details = details

    def __str__(self) -> str:
        if self.provenance:
            return f"{self.provenance}: {self.message}"
        return self.message


# =============================================================================
# Jet arithmetic
# =============================================================================


class DivisionBySingularJet(FocalFrontError):
    """Divisor's constant term vanishes within tolerance."""


class SqrtOfNonpositiveJet(FocalFrontError):
    """Square root of a jet whose constant term is not strictly positive."""


class NotDivisible(FocalFrontError):
    """The jet does not vanish on the requested coordinate axis."""


class OrderExceeded(FocalFrontError):
    """A derivative beyond the jet's truncation order was requested."""


# =============================================================================
# Surface model
# =============================================================================


class DegenerateNormal(FocalFrontError):
    """No smooth unit normal could be factored out at the point."""


class InconsistentNullDirection(FocalFrontError):
    """f_u and f_v are not proportional along the singular axis."""


class NotAdapted(FocalFrontError):
    """The chart violates the adapted-position conventions."""


class DegeneratePoint(FocalFrontError):
    """dλ vanishes at the point, so frame maps are unavailable."""


class UnsupportedKind(FocalFrontError):
    """An invariant was requested at a point of the wrong kind."""


# =============================================================================
# Curvature
# =============================================================================


class UmbilicDegeneracy(FocalFrontError):
    """Both principal branches vanish at the point."""


class NotAFront(FocalFrontError):
    """The Gauss map does not separate the null direction."""


class DegenerateFrame(FocalFrontError):
    """|x| or |y| vanishes at the point."""


class IndeterminateLimit(FocalFrontError):
    """A limit along the singular curve cannot be resolved at this jet order."""


class EvaluationOnSingularSet(FocalFrontError):
    """A regular-point formula was evaluated on the singular set."""


# =============================================================================
# Focal surface
# =============================================================================


class DegenerateContact(FocalFrontError):
    """The focal singular set is not a regular curve at the point."""


class DegenerateFocalSingularity(FocalFrontError):
    """The focal surface is degenerate at the point."""


class VanishingBoundedCurvature(FocalFrontError):
    """The bounded principal curvature vanishes, so C is undefined."""


# =============================================================================
# Inputs and outputs
# =============================================================================


class ParseError(FocalFrontError):
    """Malformed surface specification text."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(
            f"{message} (line {line}, column {column})",
            provenance="parse_surface_spec",
            line=line,
            column=column,
        )
        self.line = line
        self.column = column


class RationalOverflow(FocalFrontError):
    """A rational literal is out of the accepted range."""


class EmptyMesh(FocalFrontError):
    """Every sample of the requested mesh was dropped."""


class LostCurve(FocalFrontError):
    """The predictor-corrector trace lost the curve."""


class UnknownFixture(FocalFrontError, KeyError):
    """No fixture is registered under the requested name."""

    def __str__(self) -> str:
        return FocalFrontError.__str__(self)
