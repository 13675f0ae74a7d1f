from __future__ import annotations

"""Exception hierarchy for the spanner pipeline."""


class SpannerError(Exception):
    """Base class for every error raised by this package.

    ``stage`` names the pipeline stage that raised it, when known.
    """

    stage: str | None = None


class InputError(SpannerError):
    """Malformed or out-of-range input."""


class GeneralPositionViolation(InputError):
    """Two points share an x or a y coordinate."""


class DegenerateDirection(InputError):
    """Two points are axis-aligned, so no open cone contains one from the other."""


class DegenerateSquareWitness(InputError):
    """The only empty square through a pair has four or more points on its boundary."""


class CoordinateSpaceExhausted(InputError):
    pass


class InconsistentFiles(InputError):
    pass


class PositionOutOfRange(SpannerError, IndexError):
    pass


class AnchorUndefined(SpannerError):
    pass


class NotAPath(SpannerError):
    pass


class DisconnectedGraph(SpannerError):
    pass


# The following signal a broken invariant, i.e. a bug or undetected degeneracy.
class ClassificationContradiction(SpannerError):
    pass


class ChainCycleDetected(SpannerError):
    pass


class ChargeOverflow(SpannerError):
    pass


class DegreeOverflow(SpannerError):
    pass


class PlanarityViolation(SpannerError):
    pass
