"""
Verification package for eigencone.

Extrinsic, intrinsic and complexified computations of the connection, checked against each other.
"""
from .berry_verify import (
    EmbeddedFrame,
    VerificationReport,
    complexified_connection,
    connection_13_23,
    curvature_form_extrinsic,
    curvature_stokes,
    embedded_frame,
    extrinsic_connection,
    intrinsic_connection,
    normal_curvature_identity,
    run_verification,
    second_fundamental_form,
)

__all__ = [
    'EmbeddedFrame',
    'VerificationReport',
    'complexified_connection',
    'connection_13_23',
    'curvature_form_extrinsic',
    'curvature_stokes',
    'embedded_frame',
    'extrinsic_connection',
    'intrinsic_connection',
    'normal_curvature_identity',
    'run_verification',
    'second_fundamental_form',
]
