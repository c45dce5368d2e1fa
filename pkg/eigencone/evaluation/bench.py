"""
Benchmark of eigenvector continuation by parallel transport against repeated eigendecomposition.

Both pipelines run on the same samples. Timings are informational; the accuracy of the
transported eigenvectors against the numeric oracle is the quantity that matters.
"""
import time
from typing import Callable, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..config import get_config
from ..exceptions import BenchPreconditionError
from ..geometry.curves import AnyCurveSpec
from ..geometry.symspace import MatrixCurve
from ..spectral.eigen_oracle import angle_mod_sign, eigen_numeric_batch
from ..transport.parallel_transport import eigenvector_continuation
from ..utils.logging import bench_logger as logger


class BenchReport(BaseModel):
    """Timings (median seconds) and accuracy for one curve, sample count and substep count."""
    model_config = ConfigDict(frozen=True)

    n_samples: int
    steps_per_sample: int
    repeats: int
    wall_time_transport: float
    wall_time_repeated_eig: float
    time_ratio: float
    max_angle_error: float
    max_residual: float


def _entries(curve: MatrixCurve) -> np.ndarray:
    points = curve.points
    return np.column_stack([
        points[:, 0] + points[:, 2],
        points[:, 1],
        -points[:, 0] + points[:, 2],
    ])


def _median_time(action: Callable[[], object], repeats: int) -> float:
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        action()
        times.append(time.perf_counter() - start)
    return float(np.median(times))


def _residuals(entries: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    a, b, d = entries[:, 0], entries[:, 1], entries[:, 2]
    vx, vy = vectors[:, 0], vectors[:, 1]
    ax = a * vx + b * vy
    ay = b * vx + d * vy
    rayleigh = vx * ax + vy * ay
    return np.hypot(ax - rayleigh * vx, ay - rayleigh * vy)


class TransportBenchmark:
    """
    Times both pipelines and compares their eigenvectors.

    The curve must stay at distance min_radius from L and have at least min_samples samples.
    """

    def __init__(
        self,
        repeats: Optional[int] = None,
        min_radius: Optional[float] = None,
        min_samples: Optional[int] = None,
    ):
        """
        Initialize the benchmark.

        Args:
            repeats: Timed repetitions per pipeline; the median is reported
            min_radius: Smallest allowed distance of a sample from L
            min_samples: Smallest allowed sample count
        """
        config = get_config()["bench"]
        self.repeats = repeats if repeats is not None else config["repeats"]
        self.min_radius = min_radius if min_radius is not None else config["min_radius"]
        self.min_samples = min_samples if min_samples is not None else config["min_samples"]

    def _check(self, curve: MatrixCurve) -> None:
        if len(curve) < self.min_samples:
            raise BenchPreconditionError(
                f"Need at least {self.min_samples} samples, got {len(curve)}"
            )
        if self.repeats < 3:
            raise BenchPreconditionError(f"Need at least 3 repeats, got {self.repeats}")
        closest = float(curve.radii.min())
        if closest < self.min_radius:
            raise BenchPreconditionError(
                f"Curve comes within {closest:.3g} of L; the benchmark needs r >= {self.min_radius}"
            )

    def run_curve(self, curve: MatrixCurve, steps_per_sample: int) -> BenchReport:
        """Benchmark an already sampled curve."""
        self._check(curve)
        entries = _entries(curve)

        result = eigenvector_continuation(curve, substeps=steps_per_sample)
        _, oracle = eigen_numeric_batch(entries)
        transported = np.asarray(result.frame_components[:, :2])
        norms = np.linalg.norm(transported, axis=1, keepdims=True)
        unit = transported / norms
        max_error = float(angle_mod_sign(unit, oracle).max())
        max_residual = float(_residuals(entries, unit).max())

        t_transport = _median_time(
            lambda: eigenvector_continuation(curve, substeps=steps_per_sample), self.repeats
        )
        t_eig = _median_time(lambda: eigen_numeric_batch(entries), self.repeats)
        ratio = t_transport / t_eig if t_eig > 0.0 else float("inf")

        logger.info(
            f"N={len(curve)} substeps={steps_per_sample}: max angle error {max_error:.3e}, "
            f"transport {t_transport:.4f}s, repeated eig {t_eig:.4f}s"
        )
        return BenchReport(
            n_samples=len(curve),
            steps_per_sample=steps_per_sample,
            repeats=self.repeats,
            wall_time_transport=t_transport,
            wall_time_repeated_eig=t_eig,
            time_ratio=ratio,
            max_angle_error=max_error,
            max_residual=max_residual,
        )

    def run(self, spec: AnyCurveSpec, n_samples: int, steps_per_sample: int) -> BenchReport:
        """Sample spec at n_samples points and benchmark it."""
        if n_samples < self.min_samples:
            raise BenchPreconditionError(
                f"Need at least {self.min_samples} samples, got {n_samples}"
            )
        return self.run_curve(spec.build(n_samples), steps_per_sample)


def run_bench(
    spec: AnyCurveSpec,
    n_samples: int,
    steps_per_sample: Optional[int] = None,
    repeats: Optional[int] = None,
) -> BenchReport:
    """Benchmark transport against repeated eigendecomposition on one curve."""
    if steps_per_sample is None:
        steps_per_sample = get_config()["numerics"]["rk4_substeps"]
    return TransportBenchmark(repeats=repeats).run(spec, n_samples, steps_per_sample)


def convergence_sweep(
    spec: AnyCurveSpec,
    sample_counts: Sequence[int],
    substeps: Sequence[int] = (4,),
    repeats: Optional[int] = None,
) -> List[BenchReport]:
    """One report per (sample count, substep count) pair, in the order given."""
    bench = TransportBenchmark(repeats=repeats)
    return [bench.run(spec, n, k) for n in sample_counts for k in substeps]
