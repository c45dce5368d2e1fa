"""
Evaluation package for eigencone.

Benchmarks of transport-based eigenvector continuation.
"""
from .bench import BenchReport, TransportBenchmark, convergence_sweep, run_bench

__all__ = ['BenchReport', 'TransportBenchmark', 'convergence_sweep', 'run_bench']
