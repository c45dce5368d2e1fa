"""
Geometry package for eigencone.

This package provides the coordinate charts of Sym(2, R), curve construction and the cone metric.
"""
from .symspace import (
    CurveKind,
    MatrixCurve,
    SingularRun,
    SymPoint,
    TangentVec,
    build_curve,
    concat,
    entries_from_point,
    point_from_entries,
    unwrap_curve,
    wrap_angle,
)
from .curves import (
    circle_curve,
    half_disk_loop,
    load_curve,
    load_curve_spec,
    parse_curve_spec,
    segment_curve,
    spoke_loop,
)
from .metric_geometry import (
    ChristoffelTable,
    FrameAtPoint,
    MetricAtPoint,
    christoffel_at,
    cone_embed,
    connection_form,
    connection_form_array,
    coordinate_components,
    curvature_form,
    curve_length,
    frame_at,
    gaussian_curvature,
    inner,
    metric_at,
    polar_basis,
    tangent_from_coordinates,
)

__all__ = [
    'CurveKind',
    'MatrixCurve',
    'SingularRun',
    'SymPoint',
    'TangentVec',
    'build_curve',
    'concat',
    'entries_from_point',
    'point_from_entries',
    'unwrap_curve',
    'wrap_angle',
    'circle_curve',
    'half_disk_loop',
    'load_curve',
    'load_curve_spec',
    'parse_curve_spec',
    'segment_curve',
    'spoke_loop',
    'ChristoffelTable',
    'FrameAtPoint',
    'MetricAtPoint',
    'christoffel_at',
    'cone_embed',
    'connection_form',
    'connection_form_array',
    'coordinate_components',
    'curvature_form',
    'curve_length',
    'frame_at',
    'gaussian_curvature',
    'inner',
    'metric_at',
    'polar_basis',
    'tangent_from_coordinates',
]
