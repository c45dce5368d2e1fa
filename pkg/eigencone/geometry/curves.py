"""
Curve file schema and analytic curve primitives.

A curve file is a JSON document with one of the shapes

    {"kind": "samples", "points": [[x, y, z], ...], "closed": bool}
    {"kind": "circle", "center_z": z, "radius": r, "phi_start": a, "phi_end": b, "n": N}
    {"kind": "segment", "from": [x, y, z], "to": [x, y, z], "n": N}
    {"kind": "composite", "parts": [...]}
"""
import json
import math
from pathlib import Path
from typing import Annotated, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter

from ..config import get_config
from .symspace import CurveKind, MatrixCurve, build_curve, concat, TWO_PI

Triple = Tuple[float, float, float]


class CircleSpec(BaseModel):
    """Circle of given radius about L at height center_z, traversed from phi_start to phi_end."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["circle"]
    center_z: float
    radius: float = Field(..., ge=0.0)
    phi_start: float
    phi_end: float
    n: int = Field(..., ge=2)

    def build(self, n_samples: Optional[int] = None) -> MatrixCurve:
        n = n_samples or self.n
        phis = np.linspace(self.phi_start, self.phi_end, n)
        points = np.column_stack([
            self.radius * np.cos(phis),
            self.radius * np.sin(phis),
            np.full(n, self.center_z),
        ])
        sweep = self.phi_end - self.phi_start
        turns = round(sweep / TWO_PI)
        tol = get_config()["numerics"]["closure_tol"]
        closed = turns != 0 and abs(sweep - turns * TWO_PI) <= tol * max(1.0, abs(sweep))
        if closed:
            points[-1] = points[0]
        return build_curve(
            points, kind=CurveKind.CIRCLE, params=phis, closed=closed, analytic_phi=phis
        )


class SegmentSpec(BaseModel):
    """Straight segment between two points, endpoints included."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    kind: Literal["segment"]
    start: Triple = Field(..., alias="from")
    end: Triple = Field(..., alias="to")
    n: int = Field(..., ge=2)

    def build(self, n_samples: Optional[int] = None) -> MatrixCurve:
        n = n_samples or self.n
        t = np.linspace(0.0, 1.0, n)
        a, b = np.array(self.start), np.array(self.end)
        points = a + t[:, None] * (b - a)
        return build_curve(points, kind=CurveKind.SEGMENT, params=t, closed=False)


class SamplesSpec(BaseModel):
    """An explicit sample sequence."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["samples"]
    points: List[Triple] = Field(..., min_length=2)
    closed: bool

    def build(self, n_samples: Optional[int] = None) -> MatrixCurve:
        points = np.array(self.points, dtype=float)
        if n_samples and n_samples != len(points):
            # Resample the polyline uniformly in the sample index
            source = np.linspace(0.0, 1.0, len(points))
            target = np.linspace(0.0, 1.0, n_samples)
            points = np.column_stack([np.interp(target, source, points[:, i]) for i in range(3)])
        return build_curve(points, kind=CurveKind.SAMPLES, closed=self.closed)


class CompositeSpec(BaseModel):
    """Parts traversed in order; n_samples overrides apply to each primitive part."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["composite"]
    parts: List["CurveSpec"] = Field(..., min_length=1)

    def build(self, n_samples: Optional[int] = None) -> MatrixCurve:
        curve = self.parts[0].build(n_samples)
        for part in self.parts[1:]:
            curve = concat(curve, part.build(n_samples))
        return curve


AnyCurveSpec = Union[CircleSpec, SegmentSpec, SamplesSpec, CompositeSpec]

CurveSpec = Annotated[
    AnyCurveSpec,
    Field(discriminator="kind"),
]
CompositeSpec.model_rebuild()

_curve_spec_adapter: TypeAdapter = TypeAdapter(CurveSpec)


def parse_curve_spec(document: Union[str, dict]) -> AnyCurveSpec:
    """Validate a curve document (JSON text or decoded dict)."""
    if isinstance(document, str):
        document = json.loads(document)
    return _curve_spec_adapter.validate_python(document)


def load_curve_spec(path: Union[str, Path]) -> AnyCurveSpec:
    """Read and validate a curve file."""
    with open(path, "r") as f:
        return parse_curve_spec(json.load(f))


def load_curve(path: Union[str, Path], n_samples: Optional[int] = None) -> MatrixCurve:
    """Read a curve file and sample it."""
    return load_curve_spec(path).build(n_samples)


def circle_curve(
    radius: float,
    n: int,
    phi_start: float = 0.0,
    phi_end: float = TWO_PI,
    z: float = 0.0,
) -> MatrixCurve:
    """Circle about L; one counterclockwise turn by default."""
    return CircleSpec(
        kind="circle", center_z=z, radius=radius, phi_start=phi_start, phi_end=phi_end, n=n
    ).build()


def segment_curve(start: Triple, end: Triple, n: int) -> MatrixCurve:
    """Straight segment from start to end."""
    return SegmentSpec(kind="segment", start=start, end=end, n=n).build()


def half_disk_loop(radius: float = 1.0, n: int = 401, z: float = 0.0) -> MatrixCurve:
    """
    Boundary of the upper half disk: the arc from angle 0 to pi, then the diameter back through
    the singular line. A simple loop crossing L once.
    """
    arc = circle_curve(radius, n, 0.0, math.pi, z)
    diameter = segment_curve((-radius, 0.0, z), (radius, 0.0, z), n if n % 2 else n + 1)
    return concat(arc, diameter)


def spoke_loop(radius: float = 1.0, n: int = 401, z: float = 0.0) -> MatrixCurve:
    """
    One turn of the circle, then along the spoke at angle 0 into the singular line and back out.

    The excursion touches L and returns the way it came, so its angle jump is 0. Its lift to the
    double cover closes up through the branch point.
    """
    circle = circle_curve(radius, n, 0.0, TWO_PI, z)
    spoke_n = max(2, n // 4)
    inward = segment_curve((radius, 0.0, z), (0.0, 0.0, z), spoke_n)
    outward = segment_curve((0.0, 0.0, z), (radius, 0.0, z), spoke_n)
    return concat(concat(circle, inward), outward)
