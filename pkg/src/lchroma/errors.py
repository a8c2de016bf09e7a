"""Exception types shared across the package."""


class LchromaError(Exception):
    """Base class for all package errors."""


class InputError(LchromaError):
    """Invalid user-supplied data (bad shapes, bad files, bad arguments)."""


class DistinctnessViolation(InputError):
    """Two shapes share an endpoint coordinate or a height."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NonPositiveHeight(InputError):
    def __init__(self, shape_id):
        super().__init__(f"shape {shape_id!r} has non-positive height")
        self.shape_id = shape_id


class SharedEndpoint(InputError):
    """Interval inputs share an endpoint."""


class LimitExceeded(LchromaError):
    """An exact oracle was asked for more than its configured budget."""


class ChainExceedsOmega(LchromaError):
    """The containment order has a chain longer than the supplied clique number."""


class InvalidBase(InputError):
    """A pillar base coincides with a projection endpoint or an existing base."""


class ShapeNotOnPillar(LchromaError):
    """A shape handed to a per-pillar operation does not touch that pillar."""


class JNotInSegment(InputError):
    """A query interval is not contained in the segment it was given with."""


class NotCascading(LchromaError):
    """A tuple handed to the clique extractor fails the cascading conditions."""


class TooManyBases(InputError):
    """More bases than the divide-and-conquer ordering can color with k colors."""


class InvariantBroken(LchromaError):
    """A postcondition that is a theorem failed; this signals an implementation bug."""


class RepresentationMismatch(LchromaError):
    """A generated geometric representation disagrees with its target graph."""


class VerificationFailed(LchromaError):
    """A produced coloring failed its internal properness check."""
