"""
Two unit masses on a line joined by springs, in three boundary configurations.

fixed:    wall - k1 - m1 - k2 - m2 - k3 - wall, walls at 0 and 3a
open:     m1 - k - m2, no walls
periodic: m1 - k1 - m2 - k2 - m1 around a circle of circumference 2a

The Hessian of the energy at equilibrium is a symmetric 2x2 matrix, hence a point of Sym(2, R).
It depends linearly on the spring constants, so each configuration gives a linear map F from
the constants to matrix space, and the cone metric pulls back along F.
"""
import math
from enum import Enum
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.linalg import null_space

from ..config import get_config
from ..exceptions import SingularImageError
from ..geometry.metric_geometry import metric_at
from ..geometry.symspace import SymPoint, point_from_entries
from ..spectral.eigen_oracle import eigen_numeric
from ..utils.logging import mechanics_logger as logger


class Boundary(str, Enum):
    """How the two masses are held."""
    FIXED = "fixed"
    OPEN = "open"
    PERIODIC = "periodic"


KAPPA_COUNT: Dict[Boundary, int] = {
    Boundary.FIXED: 3,
    Boundary.OPEN: 1,
    Boundary.PERIODIC: 2,
}

_PARAM_MATRICES: Dict[Boundary, np.ndarray] = {
    Boundary.FIXED: np.array([
        [0.5, 0.0, -0.5],
        [0.0, -1.0, 0.0],
        [0.5, 1.0, 0.5],
    ]),
    Boundary.OPEN: np.array([[0.0], [-1.0], [1.0]]),
    Boundary.PERIODIC: np.array([
        [0.0, 0.0],
        [-1.0, -1.0],
        [1.0, 1.0],
    ]),
}


class SpringSystem(BaseModel):
    """Boundary kind, spring constants and rest length."""
    model_config = ConfigDict(frozen=True)

    boundary: Boundary
    kappas: Tuple[float, ...]
    rest_length: float = Field(1.0, gt=0.0)

    @model_validator(mode="after")
    def check_kappa_count(self) -> "SpringSystem":
        expected = KAPPA_COUNT[self.boundary]
        if len(self.kappas) != expected:
            raise ValueError(
                f"A {self.boundary.value} system has {expected} spring constant(s), "
                f"got {len(self.kappas)}"
            )
        return self


class ParamMap(BaseModel):
    """Matrix of the linear map from spring constants to (x, y, z)."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    boundary: Boundary
    matrix: np.ndarray

    @field_validator("matrix")
    @classmethod
    def check_shape(cls, value: np.ndarray) -> np.ndarray:
        if value.ndim != 2 or value.shape[0] != 3:
            raise ValueError(f"Expected a 3-row matrix, got shape {value.shape}")
        return value

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[1])

    def apply(self, kappas: Sequence[float]) -> SymPoint:
        k = np.asarray(kappas, dtype=float)
        if k.shape != (self.dim,):
            raise ValueError(f"Expected {self.dim} spring constant(s), got {len(k)}")
        x, y, z = self.matrix @ k
        return SymPoint(x=float(x), y=float(y), z=float(z))


def energy(s: SpringSystem, x1: float, x2: float) -> float:
    """Potential energy at positions (x1, x2)."""
    a = s.rest_length
    if s.boundary == Boundary.FIXED:
        k1, k2, k3 = s.kappas
        return 0.5 * (k1 * (x1 - a) ** 2 + k2 * (x2 - x1 - a) ** 2 + k3 * (3 * a - x2 - a) ** 2)
    if s.boundary == Boundary.OPEN:
        (k,) = s.kappas
        return 0.5 * k * (x2 - x1 - a) ** 2
    k1, k2 = s.kappas
    # Second spring runs from m2 around the circle to m1 + 2a
    return 0.5 * (k1 * (x2 - x1 - a) ** 2 + k2 * (x1 + a - x2) ** 2)


def equilibrium(s: SpringSystem) -> Tuple[float, float]:
    """
    Rest positions. Only the fixed system has a unique one; the others are fixed up to
    translation by putting the first mass at 0.
    """
    a = s.rest_length
    if s.boundary == Boundary.FIXED:
        return a, 2.0 * a
    return 0.0, a


def hessian_matrix(s: SpringSystem) -> np.ndarray:
    """Closed-form Hessian of the energy at equilibrium."""
    if s.boundary == Boundary.FIXED:
        k1, k2, k3 = s.kappas
        return np.array([[k1 + k2, -k2], [-k2, k2 + k3]])
    total = float(sum(s.kappas))
    return np.array([[total, -total], [-total, total]])


def hessian(s: SpringSystem) -> SymPoint:
    """The Hessian at equilibrium as a point of Sym(2, R)."""
    h = hessian_matrix(s)
    return point_from_entries(h[0, 0], h[0, 1], h[1, 1])


def finite_difference_hessian(s: SpringSystem, step: Optional[float] = None) -> np.ndarray:
    """Central second differences of the energy at equilibrium."""
    if step is None:
        step = get_config()["numerics"]["hessian_fd_step_rel"] * s.rest_length
    x0 = np.array(equilibrium(s))
    basis = np.eye(2) * step

    def e(point: np.ndarray) -> float:
        return energy(s, float(point[0]), float(point[1]))

    h = np.empty((2, 2))
    for i in range(2):
        h[i, i] = (e(x0 + basis[i]) - 2.0 * e(x0) + e(x0 - basis[i])) / step**2
    h[0, 1] = h[1, 0] = (
        e(x0 + basis[0] + basis[1])
        - e(x0 + basis[0] - basis[1])
        - e(x0 - basis[0] + basis[1])
        + e(x0 - basis[0] - basis[1])
    ) / (4.0 * step**2)
    return h


def param_map(boundary: Boundary) -> ParamMap:
    """Matrix of F for the boundary kind."""
    boundary = Boundary(boundary)
    matrix = _PARAM_MATRICES[boundary].copy()
    matrix.setflags(write=False)
    return ParamMap(boundary=boundary, matrix=matrix)


def pullback_metric(boundary: Boundary, kappas: Sequence[float]) -> np.ndarray:
    """
    F*g at kappas, computed as M^T g(F(kappas)) M.

    Raises:
        SingularImageError: F(kappas) lies on the singular line
    """
    fmap = param_map(boundary)
    image = fmap.apply(kappas)
    if image.r == 0.0:
        raise SingularImageError(
            f"Spring constants {tuple(kappas)} map onto the singular line; "
            "the pulled-back metric is undefined there"
        )
    g = metric_at(image).cart
    pulled = fmap.matrix.T @ g @ fmap.matrix
    logger.debug(f"Pullback for {fmap.boundary.value} at {tuple(kappas)}: image r={image.r:.6g}")
    return 0.5 * (pulled + pulled.T)


def pullback_metric_closed_form(boundary: Boundary, kappas: Sequence[float]) -> np.ndarray:
    """
    Closed-form F*g.

    Open and periodic systems map into the plane x = 0 along a fixed direction, giving the
    constants (5) and [[5, 5], [5, 5]].
    """
    boundary = Boundary(boundary)
    image = param_map(boundary).apply(kappas)
    if image.r == 0.0:
        raise SingularImageError(f"Spring constants {tuple(kappas)} map onto the singular line")
    if boundary == Boundary.OPEN:
        return np.array([[5.0]])
    if boundary == Boundary.PERIODIC:
        return np.full((2, 2), 5.0)
    x, y, r2 = image.x, image.y, image.r**2
    return np.array([
        [2 * r2 + 3 * x * x, 2 * r2 - 6 * x * y, -3 * x * x],
        [2 * r2 - 6 * x * y, 8 * r2 + 12 * y * y, 2 * r2 + 6 * x * y],
        [-3 * x * x, 2 * r2 + 6 * x * y, 2 * r2 + 3 * x * x],
    ]) / (4.0 * r2)


def metric_kernel(G: np.ndarray, tol: Optional[float] = None) -> np.ndarray:
    """
    Orthonormal basis of the null space of G, one vector per column.

    Singular values below tol times the largest count as zero. Each basis vector is signed so
    that its first nonzero component is positive.
    """
    if tol is None:
        tol = get_config()["numerics"]["kernel_tol"]
    G = np.atleast_2d(np.asarray(G, dtype=float))
    basis = null_space(G, rcond=tol)
    for j in range(basis.shape[1]):
        column = basis[:, j]
        nonzero = np.flatnonzero(np.abs(column) > tol)
        if nonzero.size and column[nonzero[0]] < 0.0:
            basis[:, j] = -column
    return basis


class NormalModes(BaseModel):
    """Squared frequencies (ascending) and mode shapes of the unit-mass system."""
    model_config = ConfigDict(frozen=True)

    frequencies_squared: Tuple[float, float]
    frequencies: Tuple[float, float]
    modes: Tuple[Tuple[float, float], Tuple[float, float]]


def normal_modes(s: SpringSystem) -> NormalModes:
    """
    Vibration frequencies and directions from the eigendecomposition of the Hessian.

    With unit masses the dynamical matrix is the Hessian itself.
    """
    pair = eigen_numeric(hessian(s))
    low, high = pair.lambda2, pair.lambda1
    return NormalModes(
        frequencies_squared=(low, high),
        frequencies=(math.sqrt(max(low, 0.0)), math.sqrt(max(high, 0.0))),
        modes=(pair.v2, pair.v1),
    )
