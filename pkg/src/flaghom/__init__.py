"""Integral homology of real flag manifolds of split semisimple Lie algebras.

The cellular chain complex comes from the Bruhat decomposition: cells are
indexed by minimal coset representatives of the Weyl group, and boundary
coefficients are computed from normal-form reduced words.
"""

from flaghom.rootsys import RootSystem, build_root_system
from flaghom.weyl import GroupTable, WeylElement, enumerate_group

__version__ = "0.1.0"

__all__ = [
    "RootSystem",
    "build_root_system",
    "GroupTable",
    "WeylElement",
    "enumerate_group",
]
