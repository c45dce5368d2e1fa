"""
Cross-validation of the connection and curvature of the cone metric.

The same connection is computed three ways: extrinsically from the frame pushed onto the
embedded cone, intrinsically from the Christoffel symbols, and from the complexified frame.
Second fundamental form, Gauss curvature and the Stokes integral around L complete the checks.
Everything extrinsic uses central finite differences, independent of the analytic formulas it
verifies.
"""
import math
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..config import get_config
from ..exceptions import SingularPointError
from ..geometry.metric_geometry import (
    SQRT3,
    christoffel_at,
    connection_form_array,
    curvature_form,
    cylindrical_metric,
    frame_at,
    gaussian_curvature,
    metric_at,
    polar_basis,
)
from ..geometry.symspace import SymPoint
from ..utils.logging import verification_logger as logger

COORDINATES = ("r", "phi", "z")

Vector3 = Tuple[float, float, float]

# Steps for differences of differences: II along phi (relative to r along r), and the outer
# differences of the extrinsic curvature
_II_STEP = 1e-4
_OUTER_STEP_R = 0.1
_OUTER_STEP_PHI = 1e-3


class EmbeddedFrame(BaseModel):
    """Pushforwards of e1, e2 onto the cone in R^3, with the unit normal E1 x E2."""
    model_config = ConfigDict(frozen=True)

    base: SymPoint
    E1: Vector3
    E2: Vector3
    nu: Vector3


class CheckResult(BaseModel):
    """Largest deviation seen by one check and whether it is within tolerance."""
    model_config = ConfigDict(frozen=True)

    max_deviation: float
    tolerance: float
    passed: bool


class VerificationReport(BaseModel):
    """Outcome of run_verification."""
    model_config = ConfigDict(frozen=True)

    seed: Optional[int]
    n_points: int
    checks: Dict[str, CheckResult]
    passed: bool
    values: Dict[str, float] = Field(default_factory=dict)


def _require_regular(p: SymPoint) -> None:
    if p.r == 0.0:
        raise SingularPointError("The embedded frame is undefined at the apex")


def _shifted(p: SymPoint, coordinate: str, amount: float) -> SymPoint:
    r, phi, z = p.r, p.phi, p.z
    if coordinate == "r":
        return SymPoint.from_cylindrical(r + amount, phi, z)
    if coordinate == "phi":
        return SymPoint.from_cylindrical(r, phi + amount, z)
    if coordinate == "z":
        return SymPoint.from_cylindrical(r, phi, z + amount)
    raise ValueError(f"Unknown coordinate {coordinate!r}; expected one of {COORDINATES}")


def coordinate_step(p: SymPoint, coordinate: str) -> float:
    """
    Central-difference step: rel * max(r, 1) along r, rel along phi, rel * max(|z|, 1) along z.

    The radial step never exceeds r / 4, so the widest stencil point stays off L.
    """
    rel = get_config()["numerics"]["fd_step_rel"]
    if coordinate == "r":
        return min(rel * max(p.r, 1.0), p.r / 4.0)
    if coordinate == "phi":
        return rel
    return rel * max(abs(p.z), 1.0)


def _derivative(function, p: SymPoint, coordinate: str, step: Optional[float] = None):
    """Fourth-order central difference of function along one cylindrical coordinate."""
    h = step if step is not None else coordinate_step(p, coordinate)
    near = function(_shifted(p, coordinate, h)) - function(_shifted(p, coordinate, -h))
    far = function(_shifted(p, coordinate, 2 * h)) - function(_shifted(p, coordinate, -2 * h))
    return (8.0 * near - far) / (12.0 * h)


def embedding_jacobian(p: SymPoint) -> np.ndarray:
    """Df for f(x, y) = (x, y, sqrt(3) r), as a 3x2 matrix."""
    _require_regular(p)
    return np.array([[1.0, 0.0], [0.0, 1.0], [SQRT3 * p.x / p.r, SQRT3 * p.y / p.r]])


def embedded_frame(p: SymPoint) -> EmbeddedFrame:
    """E_i = Df e_i on the cone, and nu = E1 x E2."""
    frame = frame_at(p)
    jac = embedding_jacobian(p)
    e1 = jac @ np.array(frame.e1[:2])
    e2 = jac @ np.array(frame.e2[:2])
    nu = np.cross(e1, e2)
    nu = nu / np.linalg.norm(nu)
    return EmbeddedFrame(base=p, E1=tuple(e1), E2=tuple(e2), nu=tuple(nu))


def _e1(p: SymPoint) -> np.ndarray:
    return np.array(embedded_frame(p).E1)


def _e2(p: SymPoint) -> np.ndarray:
    return np.array(embedded_frame(p).E2)


def _nu(p: SymPoint) -> np.ndarray:
    return np.array(embedded_frame(p).nu)


def extrinsic_connection(p: SymPoint, coordinate: str) -> float:
    """<E1, d_i E2> on the embedded cone."""
    _require_regular(p)
    return float(_e1(p) @ _derivative(_e2, p, coordinate))


def _cylindrical_frame(p: SymPoint) -> np.ndarray:
    """Columns e1, e2, e3 in the (d_r, d_phi, d_z) basis."""
    cart = frame_at(p).matrix
    r2 = p.r * p.r
    return np.vstack([
        (p.x * cart[0] + p.y * cart[1]) / p.r,
        (p.x * cart[1] - p.y * cart[0]) / r2,
        cart[2],
    ])


def intrinsic_form(p: SymPoint, a: int, b: int, coordinate: str) -> float:
    """
    g(e_a, nabla_i e_b) from the Christoffel table and differenced frame components.

    Frame indices a, b count from 1.
    """
    _require_regular(p)
    i = COORDINATES.index(coordinate)
    frame = _cylindrical_frame(p)
    e_a, e_b = frame[:, a - 1], frame[:, b - 1]
    d_e_b = _derivative(lambda q: _cylindrical_frame(q)[:, b - 1], p, coordinate)
    gamma = christoffel_at(p).gamma
    covariant = d_e_b + gamma[:, i, :] @ e_b
    return float(e_a @ cylindrical_metric(p) @ covariant)


def intrinsic_connection(p: SymPoint, coordinate: str) -> float:
    """g(e1, nabla_i e2) without reference to the embedding."""
    return intrinsic_form(p, 1, 2, coordinate)


def complexified_product(p: SymPoint, coordinate: str) -> complex:
    """Hermitian product <n, d_i n> with n = (E1 + i E2) / sqrt(2)."""
    _require_regular(p)

    def n(q: SymPoint) -> np.ndarray:
        return (_e1(q) + 1j * _e2(q)) / math.sqrt(2.0)

    return complex(np.vdot(n(p), _derivative(n, p, coordinate)))


def complexified_connection(p: SymPoint, coordinate: str) -> float:
    """Im <n, d_i n>; the real part vanishes for a unit field."""
    return complexified_product(p, coordinate).imag


def second_fundamental_form(p: SymPoint) -> np.ndarray:
    """
    II(e_a, e_b) = -<D_{e_a} nu, E_b>.

    D_{e_a} nu is assembled from differences of nu along the r and phi coordinate lines, weighted
    by the cylindrical components of e_a. Along those lines the stencil is symmetric in phi, so
    its truncation error stays parallel to d_phi nu and II keeps rank one.
    """
    _require_regular(p)
    frame = _cylindrical_frame(p)
    emb = embedded_frame(p)
    tangents = (np.array(emb.E1), np.array(emb.E2))
    d_nu_r = _derivative(_nu, p, "r", _II_STEP * p.r)
    d_nu_phi = _derivative(_nu, p, "phi", _II_STEP)
    result = np.empty((2, 2))
    for a in range(2):
        d_nu = frame[0, a] * d_nu_r + frame[1, a] * d_nu_phi
        for b in range(2):
            result[a, b] = -float(d_nu @ tangents[b])
    return result


def _coordinate_ii(p: SymPoint, coordinate: str, tangent: np.ndarray) -> float:
    """II(d_i, E_a) = -<d_i nu, E_a>."""
    return -float(_derivative(_nu, p, coordinate) @ tangent)


def normal_curvature_identity(
    p: SymPoint, first: str = "r", second: str = "phi"
) -> Tuple[float, float]:
    """
    Both sides of <d_i E1, d_j E2> - <d_j E1, d_i E2>
    = II(d_i, E1) II(d_j, E2) - II(d_j, E1) II(d_i, E2).
    """
    _require_regular(p)
    d1 = {c: _derivative(_e1, p, c) for c in (first, second)}
    d2 = {c: _derivative(_e2, p, c) for c in (first, second)}
    lhs = float(d1[first] @ d2[second] - d1[second] @ d2[first])
    e1, e2 = _e1(p), _e2(p)
    rhs = (
        _coordinate_ii(p, first, e1) * _coordinate_ii(p, second, e2)
        - _coordinate_ii(p, second, e1) * _coordinate_ii(p, first, e2)
    )
    return lhs, rhs


def curvature_form_extrinsic(p: SymPoint, step: Optional[float] = None) -> float:
    """
    d(omega)(d_r, d_phi) = d_r omega_phi - d_phi omega_r from the extrinsic connection.

    This is the coordinate component; the frame value d(omega)(e1, e2) divides it by the area
    factor 2 r. The outer steps are much coarser than the inner ones so that rounding in the
    inner differences does not dominate.
    """
    _require_regular(p)
    outer = step if step is not None else _OUTER_STEP_R * p.r
    outer_phi = step if step is not None else _OUTER_STEP_PHI
    d_r_omega_phi = _derivative(
        lambda q: extrinsic_connection(q, "phi"), p, "r", outer
    )
    d_phi_omega_r = _derivative(
        lambda q: extrinsic_connection(q, "r"), p, "phi", outer_phi
    )
    return d_r_omega_phi - d_phi_omega_r


def connection_13_23(p: SymPoint) -> float:
    """Largest |g(e_a, nabla_i e3)| over a in {1, 2} and every coordinate."""
    return max(
        abs(intrinsic_form(p, a, 3, coordinate)) for a in (1, 2) for coordinate in COORDINATES
    )


def curvature_stokes(radius: float, z: float = 0.0, n_points: Optional[int] = None) -> float:
    """
    Integral of omega around the circle of the given radius about L.

    The periodic trapezoid rule over n_points nodes; by Stokes this is the curvature enclosed.
    """
    if radius <= 0.0:
        raise ValueError(f"Radius must be positive, got {radius}")
    n = n_points or get_config()["numerics"]["stokes_points"]
    t = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    points = np.column_stack([radius * np.cos(t), radius * np.sin(t), np.full(n, z)])
    velocities = np.column_stack([-radius * np.sin(t), radius * np.cos(t), np.zeros(n)])
    return float(connection_form_array(points, velocities).sum() * (2.0 * math.pi / n))


def random_points(rng: np.random.Generator, n: int) -> List[SymPoint]:
    """Points with log-uniform r in [1e-3, 1e3], uniform angle and z in [-10, 10]."""
    radii = 10.0 ** rng.uniform(-3.0, 3.0, n)
    angles = rng.uniform(-math.pi, math.pi, n)
    heights = rng.uniform(-10.0, 10.0, n)
    return [SymPoint.from_cylindrical(r, a, z) for r, a, z in zip(radii, angles, heights)]


def _check(deviation: float, tolerance: float) -> CheckResult:
    return CheckResult(
        max_deviation=float(deviation), tolerance=tolerance, passed=bool(deviation < tolerance)
    )


def run_verification(seed: Optional[int] = None, n_points: int = 1000) -> VerificationReport:
    """
    Run every cross-check at n_points random points and report the worst deviations.
    """
    rng = np.random.default_rng(seed)
    points = random_points(rng, n_points)
    logger.info(f"Verifying at {n_points} random points (seed={seed})")

    deviations: Dict[str, float] = {
        "metric_values": 0.0,
        "frame_orthonormality": 0.0,
        "connection_analytic": 0.0,
        "extrinsic_vs_intrinsic": 0.0,
        "complexified_vs_extrinsic": 0.0,
        "complexified_real_part": 0.0,
        "second_fundamental_form_symmetry": 0.0,
        "gauss_curvature": 0.0,
        "normal_curvature_identity": 0.0,
        "connection_13_23": 0.0,
    }
    mean_curvature = []

    for p in points:
        g = metric_at(p).cart
        basis = polar_basis(p)
        d_r, d_phi = basis["r"], basis["phi"]
        metric_error = max(
            abs(d_r @ g @ d_r - 4.0),
            abs(d_r @ g @ d_phi),
            abs(d_phi @ g @ d_phi - p.r**2) / max(p.r**2, 1.0),
        )
        deviations["metric_values"] = max(deviations["metric_values"], metric_error)

        frame = frame_at(p).matrix
        gram = frame.T @ g @ frame
        deviations["frame_orthonormality"] = max(
            deviations["frame_orthonormality"], float(np.abs(gram - np.eye(3)).max())
        )

        omega = connection_form_array(
            np.stack([p.as_array()] * 3), np.stack([d_r, d_phi, basis["z"]])
        )
        deviations["connection_analytic"] = max(
            deviations["connection_analytic"],
            float(np.abs(omega - np.array([0.0, 0.5, 0.0])).max()),
        )

        for coordinate in ("r", "phi"):
            ext = extrinsic_connection(p, coordinate)
            intr = intrinsic_connection(p, coordinate)
            product = complexified_product(p, coordinate)
            deviations["extrinsic_vs_intrinsic"] = max(
                deviations["extrinsic_vs_intrinsic"], abs(ext - intr)
            )
            deviations["complexified_vs_extrinsic"] = max(
                deviations["complexified_vs_extrinsic"], abs(product.imag - ext)
            )
            deviations["complexified_real_part"] = max(
                deviations["complexified_real_part"], abs(product.real)
            )

        ii = second_fundamental_form(p)
        scale = max(abs(float(np.trace(ii))), 1.0)
        deviations["second_fundamental_form_symmetry"] = max(
            deviations["second_fundamental_form_symmetry"], abs(ii[0, 1] - ii[1, 0]) / scale
        )
        mean_curvature.append(float(np.trace(ii)) * p.r)

        # d(omega) = K dA, with dA = 2 r dr ^ dphi in coordinates
        det_ii = float(np.linalg.det(ii))
        gauss_error = max(
            abs(curvature_form(p) - det_ii),
            abs(gaussian_curvature(p)),
            abs(curvature_form_extrinsic(p) - 2.0 * p.r * det_ii),
        )
        deviations["gauss_curvature"] = max(deviations["gauss_curvature"], gauss_error)

        lhs, rhs = normal_curvature_identity(p)
        deviations["normal_curvature_identity"] = max(
            deviations["normal_curvature_identity"], abs(lhs - rhs)
        )
        deviations["connection_13_23"] = max(deviations["connection_13_23"], connection_13_23(p))

    stokes = {
        "stokes_r0.001": curvature_stokes(1e-3, 0.0),
        "stokes_r1": curvature_stokes(1.0, 0.0),
        "stokes_r10_z7": curvature_stokes(10.0, 7.0),
    }
    tolerances = {
        "metric_values": 1e-10,
        "frame_orthonormality": 1e-10,
        "connection_analytic": 1e-12,
        "extrinsic_vs_intrinsic": 1e-5,
        "complexified_vs_extrinsic": 1e-5,
        "complexified_real_part": 1e-5,
        "second_fundamental_form_symmetry": 1e-5,
        "gauss_curvature": 1e-4,
        "normal_curvature_identity": 1e-4,
        "connection_13_23": 1e-5,
    }
    checks = {name: _check(deviations[name], tolerances[name]) for name in deviations}
    for name, value in stokes.items():
        checks[name] = _check(abs(value - math.pi), 1e-10)

    passed = all(check.passed for check in checks.values())
    for name, check in checks.items():
        if not check.passed:
            logger.warning(f"Check {name} failed: {check.max_deviation:.3e} >= {check.tolerance}")
    values = dict(stokes)
    values["mean_curvature_times_r_min"] = min(mean_curvature) if mean_curvature else 0.0
    values["mean_curvature_times_r_max"] = max(mean_curvature) if mean_curvature else 0.0
    return VerificationReport(
        seed=seed, n_points=n_points, checks=checks, passed=passed, values=values
    )
