"""
Graph Orthogonality

Closed-set lattices of finite simple graphs: vertex adjunction, inflation and
deflation, compression and automorphism-group decomposition.
"""

from .version import __version__

__author__ = "Calibrate Network"
__email__ = "dev@calibratenetwork.com"
