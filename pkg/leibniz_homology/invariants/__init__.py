"""
Invariant subspaces of the action modules and the lemma suite.
"""

from .lemmas import (
    LEMMA_MODULES,
    Finding,
    LemmaReport,
    bidegree_split,
    lemma_suite,
    module_space,
    predicted_dim,
)
from .subspace import InvariantReport, acting_indices, invariant_subspace

__all__ = (
    "LEMMA_MODULES",
    "Finding",
    "InvariantReport",
    "LemmaReport",
    "acting_indices",
    "bidegree_split",
    "invariant_subspace",
    "lemma_suite",
    "module_space",
    "predicted_dim",
)
