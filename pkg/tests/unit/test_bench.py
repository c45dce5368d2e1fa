"""
Unit tests for the transport benchmark.
"""
import pytest

from eigencone.evaluation.bench import TransportBenchmark, convergence_sweep, run_bench
from eigencone.exceptions import BenchPreconditionError
from eigencone.geometry.curves import parse_curve_spec, segment_curve


class TestTransportBenchmark:
    """Test suite for benchmark runs and preconditions."""

    def test_circle_accuracy(self, circle_doc):
        """Test a benchmark run on the unit circle and its report fields."""
        report = run_bench(parse_curve_spec(circle_doc), 200, steps_per_sample=4, repeats=3)
        assert report.n_samples == 200
        assert report.steps_per_sample == 4
        assert report.repeats == 3
        assert report.max_angle_error < 1e-8
        assert report.max_residual < 1e-8
        assert report.wall_time_transport > 0.0
        assert report.time_ratio > 0.0

    def test_preconditions(self, circle_doc):
        """Too few repeats, too few samples and curves near L are refused."""
        spec = parse_curve_spec(circle_doc)
        with pytest.raises(BenchPreconditionError):
            run_bench(spec, 200, repeats=2)
        with pytest.raises(BenchPreconditionError):
            run_bench(spec, 5)
        bench = TransportBenchmark()
        near_line = segment_curve((-1.0, 0.05, 0.0), (1.0, 0.05, 0.0), 50)
        with pytest.raises(BenchPreconditionError):
            bench.run_curve(near_line, 4)

    def test_convergence_sweep(self, circle_doc):
        """Test the sweep order and that more substeps lower the error."""
        spec = parse_curve_spec(circle_doc)
        reports = convergence_sweep(spec, [20, 40], substeps=(1, 4), repeats=3)
        assert [(r.n_samples, r.steps_per_sample) for r in reports] == [
            (20, 1), (20, 4), (40, 1), (40, 4)
        ]
        assert reports[1].max_angle_error < reports[0].max_angle_error

    def test_large_sample_count(self, circle_doc):
        """Both pipelines agree on 10^5 samples."""
        report = run_bench(parse_curve_spec(circle_doc), 100_000, repeats=3)
        assert report.n_samples == 100_000
        assert report.max_angle_error <= 1e-6
        assert report.max_residual < 1e-8

    def test_error_decreases_with_sample_count(self, circle_doc):
        """Finer sampling shrinks the transport error until it reaches rounding level."""
        spec = parse_curve_spec(circle_doc)
        reports = convergence_sweep(spec, [10, 100, 1000, 10_000], repeats=3)
        errors = [r.max_angle_error for r in reports]
        assert errors[0] > errors[1] > errors[2]
        assert errors[0] < 1e-3
        assert errors[3] < 1e-12
