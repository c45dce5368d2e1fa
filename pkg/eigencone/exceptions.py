"""
Domain errors raised by eigencone.

Every error that reflects the geometry of the input (a point on the singular line, a curve
sampled too coarsely, a loop that does not close) derives from GeometryError. Plain argument
mistakes raise ValueError instead.
"""


class GeometryError(Exception):
    """Base class for domain errors."""


class SingularPointError(GeometryError):
    """A quantity was requested at a point of the singular line L (r = 0)."""


class BaseMismatchError(GeometryError):
    """Tangent vectors are based at different points."""


class BranchMismatchError(GeometryError):
    """An angle branch is not congruent to the point's angle modulo 2*pi."""


class SamplingTooCoarseError(GeometryError):
    """Consecutive nonsingular samples are pi or more apart in angle."""


class AllSingularError(GeometryError):
    """Every sample of a curve lies on the singular line."""


class DegenerateCurveError(GeometryError):
    """A curve lingers on the singular line instead of crossing it."""


class CurveEndsOnLError(GeometryError):
    """A crossing run touches an endpoint of an open curve."""


class NotClosedError(GeometryError):
    """A closed curve was required."""


class SingularStartError(GeometryError):
    """Transport was started on the singular line."""


class SingularImageError(GeometryError):
    """A parameter map sends the parameters onto the singular line."""


class UnsupportedDepthError(GeometryError):
    """The operation is only defined for the double cover (depth 1)."""


class BenchPreconditionError(GeometryError):
    """A benchmark configuration violates the benchmark preconditions."""
