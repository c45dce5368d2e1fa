"""
eigencone: eigenvector continuation on 2x2 symmetric matrices by parallel transport in the
cone metric, with geometric phases, holonomy, covering lifts and mass-spring pullback metrics.
"""
__version__ = "0.1.0"
