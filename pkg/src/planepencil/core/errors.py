"""Exception types shared across the toolkit.

Every failure mode that callers are expected to branch on gets its own
class; anything cap- or budget-related carries enough payload to name the
offending object in reports.
"""

from __future__ import annotations


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class ParseError(ToolkitError):
    """Malformed polynomial or corpus text; carries position info."""

    def __init__(self, message: str, line: int = 1, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class DivisionInexact(ToolkitError):
    """Exact polynomial division requested but the remainder is nonzero."""


class ZeroInput(ToolkitError):
    """Operation undefined for the zero polynomial."""


class UndefinedResultant(ToolkitError):
    """Resultant of two zero polynomials."""


class ConstantPolynomial(ToolkitError):
    """Operation needs a non-constant polynomial."""


class InvalidProjectivePoint(ToolkitError):
    """(0:0) is not a point of the projective line."""


class DegeneratePencil(ToolkitError):
    """P and Q are proportional; the pencil has a single member."""


class NotIrreducible(ToolkitError):
    """Input expected to be absolutely irreducible but is not."""


class DegreeCapExceeded(ToolkitError):
    """An algebraic number would exceed the configured degree cap.

    Carries the offending minimal polynomial(s) so reports can name them.
    """

    def __init__(self, message: str, min_polys: tuple[str, ...] = ()):
        super().__init__(message)
        self.min_polys = tuple(min_polys)


class InversionOfZero(ToolkitError):
    """Multiplicative inverse of zero requested."""


class BlowupBudgetExceeded(ToolkitError):
    """Resolution did not terminate within the blow-up budget."""


class NotIndeterminate(ToolkitError):
    """Blow-up center is not an indeterminacy point of the pencil."""


class InfiniteBaseLocus(ToolkitError):
    """P and Q share a common factor, so the base locus is a curve."""


class InstabilityDetected(ToolkitError):
    """Degree samples disagreed after excluding the degree-drop locus."""


class ShearDisagreement(ToolkitError):
    """Two independent shears gave different local multiplicities."""


class WitnessConstructionFailed(ToolkitError):
    """No escape witness could be built for a non-proper set candidate."""


class HypothesisNotCertified(ToolkitError):
    """A theorem-level check was requested without its certified hypothesis."""


class NoApplicableMaps(ToolkitError):
    """The equivalence harness received no applicable maps."""
