"""
Eigendecomposition of 2x2 symmetric matrices.

eigen_closed_form follows the half-angle formulas and needs the caller's continuous angle branch.
eigen_numeric solves the characteristic polynomial from the matrix entries alone and never reads
the angle, so it serves as an independent check on everything built on the geometry.
"""
import math
from typing import Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from ..exceptions import BranchMismatchError, SingularPointError
from ..geometry.symspace import SymPoint, TWO_PI, wrap_angle

# Tolerance for a branch to count as congruent to the point's angle
BRANCH_TOL = 1e-9


class EigenPair(BaseModel):
    """Eigenvalues lambda1 >= lambda2 with unit eigenvectors v1, v2."""
    model_config = ConfigDict(frozen=True)

    lambda1: float
    lambda2: float
    v1: Tuple[float, float]
    v2: Tuple[float, float]

    @model_validator(mode="after")
    def check_order(self) -> "EigenPair":
        if self.lambda1 < self.lambda2:
            raise ValueError(f"Expected lambda1 >= lambda2, got {self.lambda1} < {self.lambda2}")
        return self


def eigen_closed_form(p: SymPoint, phi_branch: float) -> EigenPair:
    """
    Closed-form eigenpair on the given angle branch.

    v1 = (cos(b/2), sin(b/2)) and v2 = (-sin(b/2), cos(b/2)) with eigenvalues z + r and z - r.
    Shifting the branch by 2 pi negates both vectors. Signs are never renormalised.
    """
    phi = p.phi
    if phi is None:
        raise SingularPointError(
            f"Every direction is an eigenvector of the scalar matrix at z = {p.z}"
        )
    if abs(wrap_angle(phi_branch - phi)) > BRANCH_TOL * max(1.0, abs(phi_branch) / TWO_PI):
        raise BranchMismatchError(
            f"Branch {phi_branch} is not congruent to the angle {phi} modulo 2 pi"
        )
    half = phi_branch / 2.0
    c, s = math.cos(half), math.sin(half)
    r = p.r
    return EigenPair(lambda1=p.z + r, lambda2=p.z - r, v1=(c, s), v2=(-s, c))


def eigen_numeric_batch(entries: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigenvalues and leading eigenvectors for stacked matrices.

    Args:
        entries: (N, 3) array of (a11, a12, a22)

    Returns:
        Tuple of (N, 2) eigenvalues (descending) and (N, 2) unit eigenvectors of the larger one
    """
    entries = np.atleast_2d(np.asarray(entries, dtype=float))
    a, b, d = entries[:, 0], entries[:, 1], entries[:, 2]
    mid = 0.5 * (a + d)
    half_gap = np.hypot(0.5 * (a - d), b)
    lam1 = mid + half_gap
    lam2 = mid - half_gap

    # Two null vectors of A - lambda1; the longer one avoids cancellation
    first = np.column_stack([b, lam1 - a])
    second = np.column_stack([lam1 - d, b])
    first_norm = np.hypot(first[:, 0], first[:, 1])
    second_norm = np.hypot(second[:, 0], second[:, 1])
    use_first = first_norm >= second_norm
    vec = np.where(use_first[:, None], first, second)
    norm = np.where(use_first, first_norm, second_norm)

    degenerate = norm == 0.0
    safe = np.where(degenerate, 1.0, norm)
    vec = vec / safe[:, None]
    vec[degenerate] = (1.0, 0.0)

    flip = (vec[:, 0] < 0.0) | ((vec[:, 0] == 0.0) & (vec[:, 1] < 0.0))
    vec[flip] *= -1.0
    return np.column_stack([lam1, lam2]), vec


def eigen_numeric(p: SymPoint) -> EigenPair:
    """
    Eigenpair from the matrix entries only.

    v1 has a nonnegative first component (nonnegative second when the first is zero); on the
    singular line the standard basis is returned.
    """
    a11 = p.x + p.z
    a22 = -p.x + p.z
    lambdas, vectors = eigen_numeric_batch(np.array([[a11, p.y, a22]]))
    v1x, v1y = float(vectors[0, 0]), float(vectors[0, 1])
    return EigenPair(
        lambda1=float(lambdas[0, 0]),
        lambda2=float(lambdas[0, 1]),
        v1=(v1x, v1y),
        v2=(-v1y, v1x),
    )


def eigen_residual(p: SymPoint, v: Sequence[float]) -> float:
    """Norm of the Rayleigh residual A v - (v^T A v) v for a unit vector v."""
    vec = np.asarray(v, dtype=float)
    if vec.shape != (2,):
        raise ValueError(f"Expected a 2-vector, got shape {vec.shape}")
    if abs(float(np.linalg.norm(vec)) - 1.0) > 1e-8:
        raise ValueError(f"Expected a unit vector, got norm {np.linalg.norm(vec)}")
    matrix = p.as_matrix()
    image = matrix @ vec
    return float(np.linalg.norm(image - (vec @ image) * vec))


def angle_mod_sign(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Angle in [0, pi/2] between the lines spanned by u and v (rowwise for stacked vectors)."""
    u = np.atleast_2d(u)
    v = np.atleast_2d(v)
    cross = u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]
    dot = np.einsum("ij,ij->i", u, v)
    return np.arctan2(np.abs(cross), np.abs(dot))
