"""Multipliers, covers and unicentrality of finite-dimensional Leibniz algebras."""

from .exactlin import GF, QQ, FieldSpec, LinearMap, Matrix, Subspace
from .leibniz_core import LeibnizAlgebra, TrivialModule, catalog, random_nilpotent, verify_leibniz
from .cohomology2 import h2
from .extensions import cover, criteria_report, is_unicentral, multiplier_dim, z_star

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "FieldSpec", "LinearMap", "Matrix", "Subspace",
    "LeibnizAlgebra", "TrivialModule", "catalog", "random_nilpotent", "verify_leibniz",
    "h2", "cover", "criteria_report", "is_unicentral", "multiplier_dim", "z_star",
]
