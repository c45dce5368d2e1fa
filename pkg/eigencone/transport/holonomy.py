"""
Holonomy groups computed from generator loops.

Each generator loop is transported numerically, its phase is snapped to a rational multiple of
pi, and the group is the set of vertices reached in the Cayley graph of those phases under
addition modulo 2 pi.
"""
import math
from fractions import Fraction
from typing import Dict, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict

from ..covering.covering import closed_lift, cover_phase
from ..geometry.curves import circle_curve, half_disk_loop, spoke_loop
from ..geometry.symspace import MatrixCurve, TangentVec
from ..utils.logging import transport_logger as logger
from .parallel_transport import parallel_transport

# Phases are recognised as multiples of pi with denominators up to this value
MAX_DENOMINATOR = 16

SNAP_TOL = 1e-6


class HolonomyGroup(BaseModel):
    """Phase classes in [0, 2 pi) with the measured generator phases they were built from."""
    model_config = ConfigDict(frozen=True)

    elements: Tuple[float, ...]
    multiples_of_pi: Tuple[str, ...]
    generators: Dict[str, float]

    @property
    def order(self) -> int:
        return len(self.elements)


def snap_phase(phase: float, tol: float = SNAP_TOL) -> Fraction:
    """The class of phase in units of pi, in [0, 2)."""
    ratio = Fraction(phase / math.pi).limit_denominator(MAX_DENOMINATOR)
    if abs(float(ratio) * math.pi - phase) > tol:
        raise ValueError(f"Phase {phase} is not a rational multiple of pi within {tol}")
    return ratio % 2


def cayley_graph(generators: Dict[str, float]) -> nx.DiGraph:
    """
    Cayley graph of the cyclic phase group generated by the given phases.

    Vertices are Fractions in [0, 2) (units of pi); each edge carries the generator name.
    """
    steps = {name: snap_phase(phase) for name, phase in generators.items()}
    graph = nx.DiGraph()
    identity = Fraction(0)
    graph.add_node(identity)
    frontier = [identity]
    while frontier:
        element = frontier.pop()
        for name, step in steps.items():
            image = (element + step) % 2
            if image not in graph:
                graph.add_node(image)
                frontier.append(image)
            graph.add_edge(element, image, generator=name)
    return graph


def close_phase_group(generators: Dict[str, float]) -> HolonomyGroup:
    """Close measured generator phases into a group of classes modulo 2 pi."""
    graph = cayley_graph(generators)
    reachable = sorted(nx.descendants(graph, Fraction(0)) | {Fraction(0)})
    members = set(reachable)
    for a in reachable:
        for b in reachable:
            if (a + b) % 2 not in members:
                raise ValueError(f"Phase classes are not closed under addition: {a} + {b}")
    return HolonomyGroup(
        elements=tuple(float(e) * math.pi for e in reachable),
        multiples_of_pi=tuple(str(e) for e in reachable),
        generators=dict(generators),
    )


def _transport_phase(curve: MatrixCurve) -> float:
    p0 = curve.samples[0]
    v0 = TangentVec(base=p0, frame_components=(1.0, 0.0, 0.0))
    return parallel_transport(curve, v0).phase


def holonomy_group(include_L_crossings: bool, n_samples: Optional[int] = None) -> HolonomyGroup:
    """
    Holonomy of the cone metric.

    The generator is the unit circle about L (winding 1); with crossings allowed the boundary
    of the upper half disk, which crosses L once (winding 1/2), is added. Off L this gives
    {0, pi}; with crossings {0, pi/2, pi, 3 pi/2}.
    """
    n = n_samples or 1001
    generators = {"circle": _transport_phase(circle_curve(1.0, n))}
    if include_L_crossings:
        generators["half_disk"] = _transport_phase(half_disk_loop(1.0, n))
    logger.debug(f"Holonomy generator phases: {generators}")
    return close_phase_group(generators)


def cover_holonomy_group(
    include_branch_crossings: bool,
    n_samples: Optional[int] = None,
) -> HolonomyGroup:
    """
    Holonomy of the double cover.

    The circle lifts to a closed loop only when traversed twice, with phase 2 pi. With passages
    through the branch point allowed, the circle followed by a spoke excursion into L lifts to a
    closed loop of phase pi. The groups are {0} and {0, pi}.
    """
    n = n_samples or 1001
    generators = {"double_turn": cover_phase(closed_lift(circle_curve(1.0, n)))}
    if include_branch_crossings:
        generators["spoke"] = cover_phase(closed_lift(spoke_loop(1.0, n)))
    logger.debug(f"Cover holonomy generator phases: {generators}")
    return close_phase_group(generators)

