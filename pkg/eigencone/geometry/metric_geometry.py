"""
The cone metric on Sym(2, R), its reference orthonormal frame, connection and curvature.

The trace-free plane carries the pullback of the Euclidean metric under the cone embedding
(x, y) -> (x, y, sqrt(3) r); the trace direction is a flat factor. In cylindrical coordinates
the metric is diag(4, r^2, 1). Every quantity here is undefined on the singular line r = 0
and raises SingularPointError there.
"""
import math
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..exceptions import BaseMismatchError, SingularPointError
from .symspace import MatrixCurve, SymPoint, TangentVec

SQRT3 = math.sqrt(3.0)

CYLINDRICAL_COORDS = ("r", "phi", "z")


def _require_regular(p: SymPoint) -> None:
    if p.r == 0.0:
        raise SingularPointError(
            f"Point ({p.x}, {p.y}, {p.z}) lies on the singular line; the cone metric is undefined"
        )


def metric_matrices(points: np.ndarray, directions: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Cartesian metric matrices for an (M, 3) array of points.

    Where a point lies on L the unit radial vector is taken from the matching row of
    directions (the limit along that direction); without directions such points give NaN.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    r = np.hypot(points[:, 0], points[:, 1])
    with np.errstate(invalid="ignore", divide="ignore"):
        ux = points[:, 0] / r
        uy = points[:, 1] / r
    if directions is not None:
        directions = np.atleast_2d(directions)
        dr = np.hypot(directions[:, 0], directions[:, 1])
        on_line = (r == 0.0) & (dr > 0.0)
        ux = np.where(on_line, directions[:, 0] / np.where(dr > 0.0, dr, 1.0), ux)
        uy = np.where(on_line, directions[:, 1] / np.where(dr > 0.0, dr, 1.0), uy)
    g = np.zeros((points.shape[0], 3, 3))
    g[:, 0, 0] = 1.0 + 3.0 * ux * ux
    g[:, 0, 1] = g[:, 1, 0] = 3.0 * ux * uy
    g[:, 1, 1] = 1.0 + 3.0 * uy * uy
    g[:, 2, 2] = 1.0
    return g


class MetricAtPoint(BaseModel):
    """Metric coefficients at a point, in cartesian (x, y, z) and cylindrical (r, phi, z) bases."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    base: SymPoint
    cart: np.ndarray
    pol: Tuple[float, float, float]


class FrameAtPoint(BaseModel):
    """Cartesian components of the reference orthonormal frame (e1, e2, e3)."""
    model_config = ConfigDict(frozen=True)

    base: SymPoint
    e1: Tuple[float, float, float]
    e2: Tuple[float, float, float]
    e3: Tuple[float, float, float]

    @property
    def matrix(self) -> np.ndarray:
        """Frame vectors as columns."""
        return np.column_stack([self.e1, self.e2, self.e3])


class ChristoffelTable(BaseModel):
    """
    Levi-Civita coefficients in cylindrical coordinates.

    gamma[i, k, l] is the coefficient of the i-th coordinate vector in nabla_k of the l-th.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    base: SymPoint
    gamma: np.ndarray

    def coefficient(self, upper: str, lower_k: str, lower_l: str) -> float:
        idx = CYLINDRICAL_COORDS.index
        return float(self.gamma[idx(upper), idx(lower_k), idx(lower_l)])


def metric_at(p: SymPoint) -> MetricAtPoint:
    """Cone metric at p; pol is the diagonal (4, r^2, 1)."""
    _require_regular(p)
    cart = metric_matrices(p.as_array()[None, :])[0]
    cart.setflags(write=False)
    return MetricAtPoint(base=p, cart=cart, pol=(4.0, p.r * p.r, 1.0))


def polar_basis(p: SymPoint) -> Dict[str, np.ndarray]:
    """Cartesian components of the coordinate vectors d/dr, d/dphi, d/dz, d/dx, d/dy."""
    _require_regular(p)
    c, s = p.x / p.r, p.y / p.r
    return {
        "r": np.array([c, s, 0.0]),
        "phi": np.array([-p.y, p.x, 0.0]),
        "z": np.array([0.0, 0.0, 1.0]),
        "x": np.array([1.0, 0.0, 0.0]),
        "y": np.array([0.0, 1.0, 0.0]),
    }


def frame_at(p: SymPoint) -> FrameAtPoint:
    """
    Reference frame e1 = cos(phi) d_r / 2 - sin(phi) d_phi / r,
    e2 = sin(phi) d_r / 2 + cos(phi) d_phi / r, e3 = d_z.
    """
    _require_regular(p)
    c, s = p.x / p.r, p.y / p.r
    e1 = (c * c / 2.0 + s * s, -c * s / 2.0, 0.0)
    e2 = (-c * s / 2.0, s * s / 2.0 + c * c, 0.0)
    return FrameAtPoint(base=p, e1=e1, e2=e2, e3=(0.0, 0.0, 1.0))


def coordinate_components(v: TangentVec) -> np.ndarray:
    """Cartesian components of a frame-stored tangent vector."""
    return frame_at(v.base).matrix @ v.as_array()


def tangent_from_coordinates(p: SymPoint, components: Sequence[float]) -> TangentVec:
    """
    Tangent vector from cartesian components.

    The frame E is g-orthonormal, so its inverse is E^T g.
    """
    c = np.asarray(components, dtype=float)
    if c.shape != (3,):
        raise ValueError(f"Expected three cartesian components, got shape {c.shape}")
    frame = frame_at(p).matrix
    g = metric_at(p).cart
    a = frame.T @ g @ c
    return TangentVec(base=p, frame_components=(float(a[0]), float(a[1]), float(a[2])))


def inner(p: SymPoint, u: TangentVec, v: TangentVec) -> float:
    """g_p(u, v) evaluated as u^T g v in cartesian components."""
    if u.base != p or v.base != p:
        raise BaseMismatchError("Both tangent vectors must be based at the evaluation point")
    g = metric_at(p).cart
    return float(coordinate_components(u) @ g @ coordinate_components(v))


def cone_embed(p: SymPoint) -> Tuple[float, float, float]:
    """The cone (x, y) -> (x, y, sqrt(3) r); z is ignored."""
    return p.x, p.y, SQRT3 * p.r


def connection_form_array(points: np.ndarray, velocities: np.ndarray) -> np.ndarray:
    """
    omega(X) = g(d_phi, X) / (2 r^2) for arrays of base points and cartesian vectors.

    Rows on the singular line give NaN.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    velocities = np.atleast_2d(np.asarray(velocities, dtype=float))
    g = metric_matrices(points)
    d_phi = np.column_stack([-points[:, 1], points[:, 0], np.zeros(points.shape[0])])
    r2 = points[:, 0] ** 2 + points[:, 1] ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.einsum("mi,mij,mj->m", d_phi, g, velocities) / (2.0 * r2)


def connection_form(p: SymPoint, X: TangentVec) -> float:
    """Connection 1-form of the reference frame; equals d(phi)/2."""
    _require_regular(p)
    if X.base != p:
        raise BaseMismatchError("The tangent vector must be based at the evaluation point")
    velocity = coordinate_components(X)
    return float(connection_form_array(p.as_array(), velocity)[0])


def christoffel_at(p: SymPoint) -> ChristoffelTable:
    """Levi-Civita connection of diag(4, r^2, 1) in (r, phi, z)."""
    _require_regular(p)
    r = p.r
    gamma = np.zeros((3, 3, 3))
    gamma[0, 1, 1] = -r / 4.0
    gamma[1, 0, 1] = gamma[1, 1, 0] = 1.0 / r
    gamma.setflags(write=False)
    return ChristoffelTable(base=p, gamma=gamma)


def curvature_form(p: SymPoint, step: Optional[float] = None) -> float:
    """
    d(omega)(e1, e2) at p, from central differences of the analytic connection components.

    With omega_r = omega(d_r) and omega_phi = omega(d_phi), the frame evaluation is
    (d_r omega_phi - d_phi omega_r) / (2 r). Off the apex this vanishes.
    """
    _require_regular(p)
    r, phi, z = p.r, p.phi, p.z
    h = step if step is not None else 1e-4 * r
    h_phi = step if step is not None else 1e-4

    def components(rr: float, pp: float) -> Tuple[float, float]:
        point = np.array([rr * math.cos(pp), rr * math.sin(pp), z])
        d_r = np.array([math.cos(pp), math.sin(pp), 0.0])
        d_phi = np.array([-point[1], point[0], 0.0])
        values = connection_form_array(np.stack([point, point]), np.stack([d_r, d_phi]))
        return float(values[0]), float(values[1])

    d_r_omega_phi = (components(r + h, phi)[1] - components(r - h, phi)[1]) / (2.0 * h)
    d_phi_omega_r = (
        components(r, phi + h_phi)[0] - components(r, phi - h_phi)[0]
    ) / (2.0 * h_phi)
    return (d_r_omega_phi - d_phi_omega_r) / (2.0 * r)


def cylindrical_metric(p: SymPoint) -> np.ndarray:
    _require_regular(p)
    return np.diag([4.0, p.r * p.r, 1.0])


def gaussian_curvature(p: SymPoint, step: Optional[float] = None) -> float:
    """
    Sectional curvature of the (r, phi) plane from the Christoffel table.

    Derivatives of the table are central differences in the cylindrical coordinates.
    """
    _require_regular(p)
    r, phi, z = p.r, p.phi, p.z
    h = step if step is not None else 1e-4 * max(r, 1.0)
    h = min(h, r / 2.0)
    coords = np.array([r, phi, z])
    d_gamma = np.zeros((3, 3, 3, 3))
    for c in range(3):
        shift = np.zeros(3)
        shift[c] = h
        plus = christoffel_at(SymPoint.from_cylindrical(*(coords + shift))).gamma
        minus = christoffel_at(SymPoint.from_cylindrical(*(coords - shift))).gamma
        d_gamma[c] = (plus - minus) / (2.0 * h)
    gamma = christoffel_at(p).gamma
    # R^a_{bcd} = d_c G^a_{db} - d_d G^a_{cb} + G^a_{ce} G^e_{db} - G^a_{de} G^e_{cb}
    riemann = (
        np.einsum("cadb->abcd", d_gamma)
        - np.einsum("dacb->abcd", d_gamma)
        + np.einsum("ace,edb->abcd", gamma, gamma)
        - np.einsum("ade,ecb->abcd", gamma, gamma)
    )
    g = cylindrical_metric(p)
    lowered = np.einsum("ae,ebcd->abcd", g, riemann)
    area = g[0, 0] * g[1, 1] - g[0, 1] ** 2
    return float(lowered[0, 1, 0, 1] / area)


# Gauss-Legendre nodes on [0, 1]
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(3)
_GL_NODES = 0.5 * (_GL_NODES + 1.0)
_GL_WEIGHTS = 0.5 * _GL_WEIGHTS


def curve_length(c: MatrixCurve) -> float:
    """
    Length in the cone metric of the polygon through the samples.

    Each chord is integrated with 3-point Gauss-Legendre quadrature, so the remaining error is
    the chord approximation itself, second order in the sample spacing.
    """
    radii = c.radii
    if np.any(radii == 0.0):
        k = int(np.flatnonzero(radii == 0.0)[0])
        raise SingularPointError(f"Sample {k} lies on the singular line; its length is undefined")
    starts = c.points[:-1]
    chords = np.diff(c.points, axis=0)
    total = 0.0
    for node, weight in zip(_GL_NODES, _GL_WEIGHTS):
        nodes = starts + node * chords
        g = metric_matrices(nodes, directions=chords)
        speed = np.sqrt(np.einsum("mi,mij,mj->m", chords, g, chords))
        total += weight * float(speed.sum())
    return total
