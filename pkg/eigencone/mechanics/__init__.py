"""
Mechanics package for eigencone.

Mass-spring systems, their Hessians and the pulled-back cone metric on spring constants.
"""
from .mass_spring import (
    Boundary,
    NormalModes,
    ParamMap,
    SpringSystem,
    energy,
    equilibrium,
    finite_difference_hessian,
    hessian,
    hessian_matrix,
    metric_kernel,
    normal_modes,
    param_map,
    pullback_metric,
    pullback_metric_closed_form,
)

__all__ = [
    'Boundary',
    'NormalModes',
    'ParamMap',
    'SpringSystem',
    'energy',
    'equilibrium',
    'finite_difference_hessian',
    'hessian',
    'hessian_matrix',
    'metric_kernel',
    'normal_modes',
    'param_map',
    'pullback_metric',
    'pullback_metric_closed_form',
]
