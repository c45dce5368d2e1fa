"""
The branched double covering of the trace-free plane and its iterates.

Upstairs the angle is halved: a cover point (rbar, phibar) projects to r = rbar and
phi = 2^depth * phibar, with the trace coordinate z carried through unchanged. The fibre over
a point off L is the set of signed eigenvector directions, so a loop that flips eigenvectors
lifts to an open path whose endpoints differ by the deck transformation.
"""
import math
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from ..config import get_config
from ..exceptions import NotClosedError, SingularPointError, UnsupportedDepthError
from ..geometry.symspace import MatrixCurve, SymPoint, concat, wrap_angle, wrap_angles
from ..transport.parallel_transport import reduce_rotation
from ..utils.logging import covering_logger as logger

HALF_PI = math.pi / 2.0


class CoverPoint(BaseModel):
    """A point of the depth-d cover in polar coordinates, with the trace coordinate."""
    model_config = ConfigDict(frozen=True)

    rbar: float = Field(..., ge=0.0)
    phibar: float
    z: float = 0.0
    depth: int = Field(1, ge=1)

    def to_cartesian(self) -> Tuple[float, float, float]:
        """Cartesian coordinates of the cover plane (not of the projected matrix)."""
        return (
            self.rbar * math.cos(self.phibar),
            self.rbar * math.sin(self.phibar),
            self.z,
        )


def project(q: CoverPoint) -> SymPoint:
    """Covering map; doubles the angle depth times and keeps r and z."""
    return SymPoint.from_cylindrical(q.rbar, (2 ** q.depth) * q.phibar, q.z)


def deck_transform(q: CoverPoint, power: int = 1) -> CoverPoint:
    """
    Apply the generating deck transformation power times.

    The generator turns phibar by 2 pi / 2^depth; for the double cover it exchanges the two
    preimages of a point.
    """
    shift = power * 2.0 * math.pi / (2 ** q.depth)
    return CoverPoint(rbar=q.rbar, phibar=q.phibar + shift, z=q.z, depth=q.depth)


def lifted_jump(angle_jump: float, depth: int = 1) -> float:
    """
    Angle jump of the lift at a passage through the branch point.

    Each level of the cover halves the jump and passes straight through the branch point,
    adding pi; the result is taken in (-pi, pi] with a right-angle tie going to +pi/2.
    """
    jump = angle_jump
    for _ in range(depth):
        through = wrap_angle(jump / 2.0 + math.pi)
        if abs(through + HALF_PI) <= 1e-12:
            through = HALF_PI
        jump = through
    return jump


class LiftedCurve(BaseModel):
    """
    A lift of a MatrixCurve, one cover point per sample.

    jumps holds the upstairs angle jump at each passage through the branch point, in the order
    of the base curve's singular runs; seam_jump is the jump across the start of a closed
    curve that begins on L.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    base: MatrixCurve
    rbar: np.ndarray
    phibar: np.ndarray
    z: np.ndarray
    depth: int
    start_branch: int
    jumps: Tuple[float, ...] = ()
    seam_jump: Optional[float] = None
    closed: bool

    def __len__(self) -> int:
        return int(self.rbar.shape[0])

    @property
    def points(self) -> List[CoverPoint]:
        return [
            CoverPoint(rbar=float(r), phibar=float(p), z=float(z), depth=self.depth)
            for r, p, z in zip(self.rbar, self.phibar, self.z)
        ]

    def projected(self) -> np.ndarray:
        """(N, 3) array of the projected samples."""
        angle = (2 ** self.depth) * self.phibar
        return np.column_stack([self.rbar * np.cos(angle), self.rbar * np.sin(angle), self.z])

    def to_frame(self) -> pd.DataFrame:
        """Per-sample table with columns t, rbar, phibar, z, depth."""
        return pd.DataFrame({
            "t": self.base.params,
            "rbar": self.rbar,
            "phibar": self.phibar,
            "z": self.z,
            "depth": np.full(len(self), self.depth),
        })


def _defined_span(c: MatrixCurve) -> Tuple[int, int]:
    """First and last samples off L of a curve, skipping a seam run at its ends."""
    for run in c.runs:
        if run.position == "seam":
            return run.stop, run.start - 1
    return 0, len(c) - 1


def lift_curve(c: MatrixCurve, start_branch: int = 1, depth: int = 1) -> LiftedCurve:
    """
    Continuous lift of c to the depth-d cover.

    phibar follows the angle track divided by 2^depth, offset by pi on the -1 branch. At a
    passage through L the lift jumps by lifted_jump instead of a scaled copy of the track jump.
    Samples off L are then re-lifted exactly so that projecting gives back c.
    """
    if start_branch not in (1, -1):
        raise ValueError(f"start_branch must be +1 or -1, got {start_branch}")
    if depth < 1:
        raise ValueError(f"Cover depth must be positive, got {depth}")

    scale = 2 ** depth
    track = np.asarray(c.unwrapped_phi, dtype=float)
    phibar = track / scale
    if start_branch == -1:
        phibar = phibar + math.pi

    jumps: List[float] = []
    seam_jump: Optional[float] = None
    for run in c.runs:
        if run.position == "interior":
            jump = lifted_jump(run.angle_jump, depth)
            phibar[run.stop:] += jump - run.angle_jump / scale
            jumps.append(jump)
        elif run.position == "seam":
            seam_jump = lifted_jump(run.angle_jump, depth)

    radii = c.radii
    off_line = radii > 0.0
    angles = np.arctan2(c.points[:, 1], c.points[:, 0])
    phibar = np.where(
        off_line, phibar + wrap_angles(angles - scale * phibar) / scale, phibar
    )

    tol = get_config()["numerics"]["closure_tol"]
    closed = False
    if c.closed:
        first, last = _defined_span(c)
        total = phibar[last] - phibar[first] + (seam_jump or 0.0)
        closed = bool(abs(wrap_angle(total)) <= tol * max(1.0, abs(total)))

    logger.debug(
        f"Lifted {len(c)} samples to depth {depth} on branch {start_branch:+d}; "
        f"{len(jumps)} branch passage(s), closed={closed}"
    )
    rbar = radii.copy()
    for array in (rbar, phibar):
        array.setflags(write=False)
    return LiftedCurve(
        base=c,
        rbar=rbar,
        phibar=phibar,
        z=c.points[:, 2].copy(),
        depth=depth,
        start_branch=start_branch,
        jumps=tuple(jumps),
        seam_jump=seam_jump,
        closed=closed,
    )


def closed_lift(c: MatrixCurve, start_branch: int = 1) -> LiftedCurve:
    """Lift of a closed curve to the double cover, traversing c twice if one pass stays open."""
    if not c.closed:
        raise NotClosedError("Only closed curves have closed lifts")
    lifted = lift_curve(c, start_branch=start_branch, depth=1)
    if not lifted.closed:
        lifted = lift_curve(concat(c, c), start_branch=start_branch, depth=1)
    return lifted


def cover_metric_at(q: CoverPoint) -> np.ndarray:
    """Pullback metric diag(4, 4 rbar^2) of the double cover in (rbar, phibar)."""
    if q.depth != 1:
        raise UnsupportedDepthError(
            f"The pullback metric is only specified for the double cover, got depth {q.depth}"
        )
    if q.rbar == 0.0:
        raise SingularPointError("The cover metric is undefined at the branch point")
    return np.diag([4.0, 4.0 * q.rbar * q.rbar])


def cover_phase(lifted: LiftedCurve) -> float:
    """
    Geometric phase of a closed lifted loop for the connection d(phibar).

    The smooth part is the increment of phibar; each passage through the branch point adds its
    jump reduced modulo pi, since the fibre there is only defined up to sign. Loops avoiding
    the branch point give 2 pi times their winding number.
    """
    if lifted.depth != 1:
        raise UnsupportedDepthError(
            f"The cover phase is only specified for the double cover, got depth {lifted.depth}"
        )
    if not lifted.closed:
        raise NotClosedError("The lifted curve does not close; its phase is not a holonomy")
    first, last = _defined_span(lifted.base)
    smooth = float(lifted.phibar[last] - lifted.phibar[first]) - sum(lifted.jumps)
    passages = list(lifted.jumps)
    if lifted.seam_jump is not None:
        passages.append(lifted.seam_jump)
    return smooth + sum(reduce_rotation(j, math.pi) for j in passages)


def cover_winding_number(lifted: LiftedCurve) -> float:
    """Winding number of a closed lifted loop, cover_phase / 2 pi."""
    return cover_phase(lifted) / (2.0 * math.pi)
