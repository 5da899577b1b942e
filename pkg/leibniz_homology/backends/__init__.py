"""
Rank backends for leibniz-homology.

This module exposes:
- The abstract backend contract
- Exact rational elimination (ranks, kernels, span membership)
- Prime-field backends: dense echelon, sparse Markowitz elimination,
  black-box (Wiedemann-type) rank

Backends only compute ranks and kernels. Choosing a method, drawing
primes and certifying agreement belong to the engine.
"""

from .base import RankBackend, RankRun
from .blackbox import BlackBoxBackend
from .dense_modp import DenseModularBackend
from .rational import RationalBackend
from .sparse_modp import SparseModularBackend

__all__ = (
    "RankBackend",
    "RankRun",
    "RationalBackend",
    "DenseModularBackend",
    "SparseModularBackend",
    "BlackBoxBackend",
)
