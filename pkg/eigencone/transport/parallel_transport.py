"""
Parallel transport of tangent vectors along matrix curves in the cone metric.

In the reference frame the transport equation is a pure rotation of (a1, a2) driven by the
connection form, a' = omega(gamma') * (-a2, a1), with a3 constant. Writing a1 + i a2 as one
complex number each RK4 step becomes multiplication by a complex factor, so a whole curve is
a cumulative product.

Where a curve passes through the singular line L the frame is undefined. The vector is held
across the run of singular samples and rotated at the exit sample by the crossing rotation: the
half angle jump reduced modulo pi/2 into (-pi/4, pi/4]. That is the smallest rotation that keeps
an eigenvector an eigenvector. A straight crossing therefore applies no rotation and the vector
continues as the eigenvector of the other eigenvalue.
"""
import math
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from ..config import get_config
from ..exceptions import (
    BaseMismatchError,
    CurveEndsOnLError,
    NotClosedError,
    SingularStartError,
)
from ..geometry.metric_geometry import connection_form_array
from ..geometry.symspace import MatrixCurve, SymPoint, TangentVec, build_curve
from ..spectral.eigen_oracle import eigen_closed_form
from ..utils.logging import transport_logger as logger

HALF_PI = math.pi / 2.0


def reduce_rotation(angle: float, period: float) -> float:
    """Reduce angle modulo period into (-period/2, period/2]."""
    k = math.ceil(angle / period - 0.5)
    return angle - k * period


class CrossingEvent(BaseModel):
    """
    One passage of a curve through the singular line.

    phase_jump is half the principal angle jump; frame_rotation is what transport applies.
    """
    model_config = ConfigDict(frozen=True)

    index: int = Field(..., description="First sample of the run on L")
    exit_index: int = Field(..., description="First sample after the run")
    phi_in: float
    phi_out: float
    angle_jump: float = Field(..., description="Principal increment phi_out - phi_in")
    phase_jump: float
    frame_rotation: float
    seam: bool = Field(False, description="Run wraps around the start of a closed curve")


class TransportResult(BaseModel):
    """Transported frame components and accumulated phase, one row per curve sample."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    curve: MatrixCurve
    frame_components: np.ndarray
    phase_track: np.ndarray
    crossings: Tuple[CrossingEvent, ...] = ()
    substeps: int

    @property
    def phase(self) -> float:
        """Rotation of the last vector relative to the first."""
        return float(self.phase_track[-1])

    @property
    def vectors(self) -> List[TangentVec]:
        return [
            TangentVec(base=base, frame_components=tuple(float(a) for a in row))
            for base, row in zip(self.curve.samples, self.frame_components)
        ]

    def vector_at(self, k: int) -> TangentVec:
        p = self.curve.points[k]
        return TangentVec(
            base=SymPoint(x=p[0], y=p[1], z=p[2]),
            frame_components=tuple(float(a) for a in self.frame_components[k]),
        )

    def to_frame(self) -> pd.DataFrame:
        """Per-sample table with columns t, x, y, z, a1, a2, phase."""
        points = self.curve.points
        return pd.DataFrame({
            "t": self.curve.params,
            "x": points[:, 0],
            "y": points[:, 1],
            "z": points[:, 2],
            "a1": self.frame_components[:, 0],
            "a2": self.frame_components[:, 1],
            "phase": self.phase_track,
        })


def detect_crossings(c: MatrixCurve, eps: Optional[float] = None) -> List[CrossingEvent]:
    """
    Crossing events of the singular line.

    Each maximal run of samples with r < eps is one event. phi_in comes from the last sample
    before the run and phi_out from the first after it; the angle jump is their principal
    difference with ties going to +pi.

    Args:
        c: The curve
        eps: Crossing threshold; defaults to the threshold the curve was built with

    Raises:
        CurveEndsOnLError: A run touches an endpoint of an open curve
    """
    if eps is not None:
        if eps <= 0.0:
            raise ValueError(f"Crossing threshold must be positive, got {eps}")
        if eps != c.crossing_eps:
            c = build_curve(c.points, kind=c.kind, params=c.params, closed=c.closed, eps=eps)

    events: List[CrossingEvent] = []
    for run in c.runs:
        if run.position in ("leading", "trailing"):
            raise CurveEndsOnLError(
                f"Samples {run.start}..{run.stop - 1} lie on L at the {run.position} end of an "
                "open curve; the direction on that side is undefined"
            )
        half = run.angle_jump / 2.0
        events.append(CrossingEvent(
            index=run.start,
            exit_index=run.stop,
            phi_in=run.phi_in,
            phi_out=run.phi_out,
            angle_jump=run.angle_jump,
            phase_jump=half,
            frame_rotation=reduce_rotation(half, HALF_PI),
            seam=run.position == "seam",
        ))
    for event in events:
        logger.debug(
            f"Crossing at samples {event.index}..{event.exit_index - 1}: "
            f"jump {event.angle_jump:.6f}, rotation {event.frame_rotation:.6f}"
        )
    return events


def geometric_phase(c: MatrixCurve) -> float:
    """
    Rotation angle of parallel transport along c.

    Half the smooth increment of the angle track plus the crossing rotations. For closed curves
    this is pi times the winding number.
    """
    events = detect_crossings(c)
    smooth = c.total_increment - sum(e.angle_jump for e in events if not e.seam)
    return smooth / 2.0 + sum(e.frame_rotation for e in events)


def winding_number(c: MatrixCurve) -> float:
    """
    Winding number about L, geometric_phase / pi.

    Integer for closed curves avoiding L; a straight crossing contributes half a turn.
    """
    if not c.closed:
        raise NotClosedError("The winding number is defined for closed curves only")
    return geometric_phase(c) / math.pi


def _rk4_factors(points: np.ndarray, substeps: int) -> np.ndarray:
    """
    Complex RK4 propagators of z' = i omega z over each chord between consecutive samples.

    The chord k is P_k + s D_k for s in [0, 1], split into substeps equal steps.
    """
    n_chords = points.shape[0] - 1
    h = 1.0 / substeps
    s = np.linspace(0.0, 1.0, 2 * substeps + 1)
    starts = points[:-1]
    chords = np.diff(points, axis=0)
    nodes = starts[:, None, :] + s[None, :, None] * chords[:, None, :]
    velocities = np.broadcast_to(chords[:, None, :], nodes.shape)
    with np.errstate(invalid="ignore", divide="ignore"):
        w = connection_form_array(nodes.reshape(-1, 3), velocities.reshape(-1, 3))
    w = w.reshape(n_chords, 2 * substeps + 1)

    w_start, w_mid, w_end = w[:, 0:-1:2], w[:, 1::2], w[:, 2::2]
    k1 = 1j * w_start
    k2 = 1j * w_mid * (1.0 + 0.5 * h * k1)
    k3 = 1j * w_mid * (1.0 + 0.5 * h * k2)
    k4 = 1j * w_end * (1.0 + h * k3)
    steps = 1.0 + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return np.prod(steps, axis=1)


def parallel_transport(
    c: MatrixCurve,
    v0: TangentVec,
    substeps: Optional[int] = None,
) -> TransportResult:
    """
    Parallel transport v0 along c with fixed-step RK4.

    Args:
        c: The curve; its first sample must lie off L
        v0: Initial vector, based at the first sample
        substeps: RK4 steps per sample interval (default from RK4_SUBSTEPS)

    Returns:
        TransportResult: Frame components and phase at every sample
    """
    if substeps is None:
        substeps = get_config()["numerics"]["rk4_substeps"]
    if substeps < 1:
        raise ValueError(f"Need at least one RK4 substep per sample, got {substeps}")

    mask = c.singular_mask
    if mask[0]:
        raise SingularStartError("Transport cannot start on the singular line")
    if not np.allclose(v0.base.as_array(), c.points[0], rtol=1e-12, atol=0.0):
        raise BaseMismatchError(
            f"Initial vector is based at {v0.base.as_array()}, the curve starts at {c.points[0]}"
        )

    events = detect_crossings(c)
    factors = _rk4_factors(c.points, substeps)
    for event in events:
        factors[event.index - 1:event.exit_index] = 1.0
        factors[event.exit_index - 1] = complex(
            math.cos(event.frame_rotation), math.sin(event.frame_rotation)
        )

    a1, a2, a3 = v0.frame_components
    rotation = np.concatenate([[1.0 + 0.0j], np.cumprod(factors)])
    planar = complex(a1, a2) * rotation
    components = np.column_stack([planar.real, planar.imag, np.full(len(c), a3)])
    phase_track = np.concatenate([[0.0], np.cumsum(np.angle(factors))])

    logger.debug(
        f"Transported along {len(c)} samples with {substeps} substeps, "
        f"{len(events)} crossing(s), phase {phase_track[-1]:.12f}"
    )
    components.setflags(write=False)
    phase_track.setflags(write=False)
    return TransportResult(
        curve=c,
        frame_components=components,
        phase_track=phase_track,
        crossings=tuple(events),
        substeps=substeps,
    )


def eigenvector_continuation(
    c: MatrixCurve,
    sign_hint: int = 1,
    substeps: Optional[int] = None,
) -> TransportResult:
    """
    Continue the eigenvector of the larger eigenvalue along c by parallel transport.

    The initial frame components are the closed-form eigenvector at the first sample on the
    curve's own angle branch, times sign_hint. Each transported (a1, a2) is an eigenvector of
    the sample matrix; after a straight crossing of L it belongs to the other eigenvalue.
    """
    if sign_hint not in (1, -1):
        raise ValueError(f"sign_hint must be +1 or -1, got {sign_hint}")
    if c.singular_mask[0]:
        raise SingularStartError("Eigenvector continuation cannot start on the singular line")
    p0 = c.samples[0]
    pair = eigen_closed_form(p0, float(c.unwrapped_phi[0]))
    v0 = TangentVec(
        base=p0,
        frame_components=(sign_hint * pair.v1[0], sign_hint * pair.v1[1], 0.0),
    )
    return parallel_transport(c, v0, substeps=substeps)
