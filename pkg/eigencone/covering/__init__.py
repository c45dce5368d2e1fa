"""
Covering package for eigencone.

The branched double covering, curve lifts and the phase upstairs.
"""
from .covering import (
    CoverPoint,
    LiftedCurve,
    closed_lift,
    cover_metric_at,
    cover_phase,
    cover_winding_number,
    deck_transform,
    lift_curve,
    lifted_jump,
    project,
)

__all__ = [
    'CoverPoint',
    'LiftedCurve',
    'closed_lift',
    'cover_metric_at',
    'cover_phase',
    'cover_winding_number',
    'deck_transform',
    'lift_curve',
    'lifted_jump',
    'project',
]
