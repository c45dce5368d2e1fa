"""
Coordinate charts and angle bookkeeping for the space of 2x2 real symmetric matrices.

A symmetric matrix [[x + z, y], [y, -x + z]] is the point (x, y, z). The trace-free plane is
z = 0; the singular line L (repeated eigenvalues) is x = y = 0. Cylindrical coordinates
(r, phi, z) are defined off L, with phi in (-pi, pi].
"""
import math
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..config import get_config
from ..exceptions import (
    AllSingularError,
    DegenerateCurveError,
    NotClosedError,
    SamplingTooCoarseError,
)
from ..utils.logging import geometry_logger as logger

TWO_PI = 2.0 * math.pi

# Steps whose wrapped angle increment is this close to pi are aliased
_ALIAS_MARGIN = 1e-9


def wrap_angle(angle: float) -> float:
    """Reduce an angle to the principal interval (-pi, pi]."""
    return angle - TWO_PI * math.ceil((angle - math.pi) / TWO_PI)


def wrap_angles(angles: np.ndarray) -> np.ndarray:
    """Vectorised wrap_angle."""
    return angles - TWO_PI * np.ceil((angles - np.pi) / TWO_PI)


class SymPoint(BaseModel):
    """
    A point of Sym(2, R) in cartesian coordinates.

    phi is None on the singular line; callers must branch on it.
    """
    model_config = ConfigDict(frozen=True)

    x: float = Field(..., description="Trace-free diagonal part")
    y: float = Field(..., description="Off-diagonal entry")
    z: float = Field(0.0, description="Half-trace")

    @property
    def r(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def phi(self) -> Optional[float]:
        if self.x == 0.0 and self.y == 0.0:
            return None
        return wrap_angle(math.atan2(self.y, self.x))

    @property
    def phi_defined(self) -> bool:
        return self.phi is not None

    def is_singular(self, tol: float = 0.0) -> bool:
        """Whether the point lies within tol of the singular line."""
        return self.r <= tol

    @classmethod
    def from_cylindrical(cls, r: float, phi: float, z: float = 0.0) -> "SymPoint":
        if r < 0.0:
            raise ValueError(f"Cylindrical radius must be nonnegative, got {r}")
        return cls(x=r * math.cos(phi), y=r * math.sin(phi), z=z)

    def to_cylindrical(self) -> Tuple[float, Optional[float], float]:
        return self.r, self.phi, self.z

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.x + self.z, self.y], [self.y, -self.x + self.z]])

    def __add__(self, other: "SymPoint") -> "SymPoint":
        return SymPoint(x=self.x + other.x, y=self.y + other.y, z=self.z + other.z)

    def __mul__(self, factor: float) -> "SymPoint":
        return SymPoint(x=factor * self.x, y=factor * self.y, z=factor * self.z)

    __rmul__ = __mul__


class TangentVec(BaseModel):
    """
    A tangent vector at a SymPoint, stored as components in the reference frame (e1, e2, e3).

    The frame is orthonormal for the cone metric, so the metric norm is the Euclidean norm of
    the frame components.
    """
    model_config = ConfigDict(frozen=True)

    base: SymPoint
    frame_components: Tuple[float, float, float]

    def as_array(self) -> np.ndarray:
        return np.array(self.frame_components)

    def norm(self) -> float:
        return float(np.linalg.norm(self.frame_components))


def point_from_entries(a11: float, a12: float, a22: float) -> SymPoint:
    """Chart from matrix entries to (x, y, z)."""
    return SymPoint(x=(a11 - a22) / 2.0, y=a12, z=(a11 + a22) / 2.0)


def entries_from_point(p: SymPoint) -> Tuple[float, float, float]:
    """Inverse chart: (x, y, z) to the entries (a11, a12, a22)."""
    return p.x + p.z, p.y, -p.x + p.z


class CurveKind(str, Enum):
    """Origin of a MatrixCurve's samples."""
    CIRCLE = "circle"
    SEGMENT = "segment"
    COMPOSITE = "composite"
    SAMPLES = "samples"


class SingularRun(BaseModel):
    """
    A maximal run of consecutive samples within the crossing threshold of L.

    Interior runs are crossings; their angle jump is part of the unwrapped track. A seam run
    wraps around the start of a closed curve and is not part of the track. Leading and trailing
    runs touch an endpoint of an open curve.
    """
    model_config = ConfigDict(frozen=True)

    start: int = Field(..., ge=0, description="First singular sample")
    stop: int = Field(..., ge=0, description="First nonsingular sample after the run")
    position: str = Field(..., description="interior, seam, leading or trailing")
    phi_in: Optional[float] = None
    phi_out: Optional[float] = None
    angle_jump: Optional[float] = Field(
        None, description="Principal increment phi_out - phi_in in (-pi, pi]"
    )


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array, dtype=float)
    array.setflags(write=False)
    return array


class MatrixCurve(BaseModel):
    """
    A one-parameter family of symmetric matrices, sampled, with a continuous angle track.

    points has shape (N, 3) in (x, y, z); unwrapped_phi holds the track (held constant across
    runs on L); runs records every sample run within crossing_eps of L.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: CurveKind
    points: np.ndarray
    params: np.ndarray
    unwrapped_phi: np.ndarray
    closed: bool
    crossing_eps: float
    runs: Tuple[SingularRun, ...] = ()

    def __len__(self) -> int:
        return int(self.points.shape[0])

    @property
    def samples(self) -> List[SymPoint]:
        return [SymPoint(x=p[0], y=p[1], z=p[2]) for p in self.points]

    @property
    def radii(self) -> np.ndarray:
        return np.hypot(self.points[:, 0], self.points[:, 1])

    @property
    def singular_mask(self) -> np.ndarray:
        return self.radii < self.crossing_eps

    @property
    def total_increment(self) -> float:
        """Increment of the unwrapped track from the first to the last sample."""
        return float(self.unwrapped_phi[-1] - self.unwrapped_phi[0])

    def reversed(self) -> "MatrixCurve":
        """The same samples traversed backwards."""
        params = self.params[0] + self.params[-1] - self.params[::-1]
        analytic = None
        if not self.runs and self.kind == CurveKind.CIRCLE:
            analytic = self.unwrapped_phi[::-1]
        return build_curve(
            self.points[::-1],
            kind=self.kind,
            params=params,
            closed=self.closed,
            eps=self.crossing_eps,
            analytic_phi=analytic,
        )


def _coerce_points(samples: Union[Sequence[SymPoint], np.ndarray]) -> np.ndarray:
    if isinstance(samples, np.ndarray):
        points = np.asarray(samples, dtype=float)
    else:
        points = np.array([[s.x, s.y, s.z] for s in samples], dtype=float)
    if points.ndim != 2 or points.shape[1] != 3:
        raise ValueError(f"Expected an (N, 3) array of points, got shape {points.shape}")
    if points.shape[0] < 2:
        raise ValueError("A curve needs at least two samples")
    return points


def _endpoints_coincide(points: np.ndarray, tol: float) -> bool:
    scale = max(1.0, float(np.abs(points).max()))
    return bool(np.abs(points[0] - points[-1]).max() <= tol * scale)


def _find_runs(singular: np.ndarray) -> List[Tuple[int, int]]:
    """Maximal [start, stop) runs of True values."""
    padded = np.concatenate(([False], singular, [False])).astype(np.int8)
    edges = np.flatnonzero(np.diff(padded))
    return [(int(a), int(b)) for a, b in zip(edges[::2], edges[1::2])]


def build_curve(
    samples: Union[Sequence[SymPoint], np.ndarray],
    kind: CurveKind = CurveKind.SAMPLES,
    params: Optional[np.ndarray] = None,
    closed: Optional[bool] = None,
    eps: Optional[float] = None,
    analytic_phi: Optional[np.ndarray] = None,
) -> MatrixCurve:
    """
    Build a MatrixCurve, unwrapping the angle track sample by sample.

    Args:
        samples: SymPoints or an (N, 3) array
        kind: Origin of the samples
        params: Curve parameter per sample; defaults to linspace(0, 1, N)
        closed: Whether the curve is a loop; inferred from the endpoints when None
        eps: Crossing threshold; defaults to CROSSING_EPS_REL times the max radius
        analytic_phi: Exact angle track for analytic primitives avoiding L

    Returns:
        MatrixCurve: The curve with its continuous angle track and singular runs
    """
    numerics = get_config()["numerics"]
    points = _coerce_points(samples)
    n = points.shape[0]

    if params is None:
        params = np.linspace(0.0, 1.0, n)
    params = np.asarray(params, dtype=float)
    if params.shape != (n,):
        raise ValueError(f"Expected {n} parameter values, got shape {params.shape}")

    closure_tol = numerics["closure_tol"]
    coincide = _endpoints_coincide(points, closure_tol)
    if closed is None:
        closed = coincide
        if closed:
            logger.debug("Inferred a closed curve from coinciding endpoints")
    elif closed and not coincide:
        raise NotClosedError(
            f"Curve is flagged closed but its endpoints differ: {points[0]} vs {points[-1]}"
        )

    radii = np.hypot(points[:, 0], points[:, 1])
    max_r = float(radii.max())
    if max_r == 0.0:
        raise AllSingularError("Every sample lies on the singular line")
    if eps is None:
        eps = numerics["crossing_eps_rel"] * max_r
    if eps <= 0.0:
        raise ValueError(f"Crossing threshold must be positive, got {eps}")

    singular = radii < eps
    if singular.all():
        raise AllSingularError("Every sample lies within the crossing threshold of L")
    linger = numerics["linger_fraction"]
    if singular.sum() > linger * n:
        raise DegenerateCurveError(
            f"{int(singular.sum())} of {n} samples lie within {eps:.3g} of L; "
            "the curve lingers on the singular line instead of crossing it"
        )

    angles = np.where(singular, 0.0, np.arctan2(points[:, 1], points[:, 0]))
    angles = wrap_angles(angles)

    spans = _find_runs(singular)
    runs: List[SingularRun] = []
    track = np.empty(n)

    if analytic_phi is not None and not spans:
        track[:] = np.asarray(analytic_phi, dtype=float)
    else:
        first = int(np.flatnonzero(~singular)[0])
        track[: first + 1] = angles[first]
        last_defined = first
        for k in range(first + 1, n):
            if singular[k]:
                track[k] = track[k - 1]
                continue
            step = wrap_angle(angles[k] - angles[last_defined])
            if last_defined == k - 1 and abs(step) >= math.pi - _ALIAS_MARGIN:
                raise SamplingTooCoarseError(
                    f"Samples {k - 1} and {k} are {abs(step):.6f} rad apart; "
                    "consecutive samples must be less than pi apart in angle"
                )
            track[k] = track[last_defined] + step
            last_defined = k

    for start, stop in spans:
        touches_start = start == 0
        touches_end = stop == n
        if not touches_start and not touches_end:
            jump = wrap_angle(angles[stop] - angles[start - 1])
            runs.append(SingularRun(
                start=start, stop=stop, position="interior",
                phi_in=float(angles[start - 1]), phi_out=float(angles[stop]),
                angle_jump=jump,
            ))
        elif not closed:
            runs.append(SingularRun(
                start=start, stop=stop, position="leading" if touches_start else "trailing",
            ))

    if closed and (singular[0] or singular[-1]):
        defined = np.flatnonzero(~singular)
        last_in, first_out = int(defined[-1]), int(defined[0])
        jump = wrap_angle(angles[first_out] - angles[last_in])
        runs.append(SingularRun(
            start=last_in + 1, stop=first_out, position="seam",
            phi_in=float(angles[last_in]), phi_out=float(angles[first_out]),
            angle_jump=jump,
        ))

    if runs:
        logger.debug(f"Curve with {n} samples has {len(runs)} singular run(s) at eps={eps:.3g}")

    return MatrixCurve(
        kind=kind,
        points=_readonly(points),
        params=_readonly(params),
        unwrapped_phi=_readonly(track),
        closed=bool(closed),
        crossing_eps=float(eps),
        runs=tuple(runs),
    )


def unwrap_curve(
    samples: Union[Sequence[SymPoint], np.ndarray],
    closed: Optional[bool] = None,
    eps: Optional[float] = None,
) -> MatrixCurve:
    """
    Build a sampled MatrixCurve with a continuous angle track.

    Between consecutive nonsingular samples the track follows the principal increment, which
    minimises total variation; increments of pi or more are aliased and rejected. Across a run
    of samples on L the track is held and then jumps by the principal increment between the
    angles on either side (pi, not -pi, for a straight crossing).
    """
    return build_curve(samples, kind=CurveKind.SAMPLES, closed=closed, eps=eps)


def concat(first: MatrixCurve, second: MatrixCurve) -> MatrixCurve:
    """
    Traverse first, then second. A shared junction sample is kept once.
    """
    tol = get_config()["numerics"]["closure_tol"]
    second_points = second.points
    second_params = second.params
    junction = np.stack([first.points[-1], second.points[0]])
    if _endpoints_coincide(junction, tol):
        second_points = second_points[1:]
        second_params = second_params[1:]
    offset = first.params[-1] - second.params[0]
    points = np.concatenate([first.points, second_points])
    params = np.concatenate([first.params, second_params + offset])
    if np.any(np.diff(params) < 0):
        params = np.linspace(0.0, 1.0, points.shape[0])
    return build_curve(points, kind=CurveKind.COMPOSITE, params=params)
