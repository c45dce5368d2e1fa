"""
Spectral package for eigencone.

Closed-form and numeric eigendecomposition of 2x2 symmetric matrices.
"""
from .eigen_oracle import (
    EigenPair,
    angle_mod_sign,
    eigen_closed_form,
    eigen_numeric,
    eigen_numeric_batch,
    eigen_residual,
)

__all__ = [
    'EigenPair',
    'angle_mod_sign',
    'eigen_closed_form',
    'eigen_numeric',
    'eigen_numeric_batch',
    'eigen_residual',
]
