"""
Transport package for eigencone.

Parallel transport, geometric phases, winding numbers and holonomy groups.
"""
from .parallel_transport import (
    CrossingEvent,
    TransportResult,
    detect_crossings,
    eigenvector_continuation,
    geometric_phase,
    parallel_transport,
    reduce_rotation,
    winding_number,
)

__all__ = [
    'CrossingEvent',
    'TransportResult',
    'detect_crossings',
    'eigenvector_continuation',
    'geometric_phase',
    'parallel_transport',
    'reduce_rotation',
    'winding_number',
]
