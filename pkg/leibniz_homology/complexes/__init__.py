"""
Chevalley–Eilenberg and Loday complexes, their boundaries and homology.
"""

from .base import BracketTable, ChainComplex
from .chevalley_eilenberg import ChevalleyEilenbergComplex, Convention, ce_boundary
from .claims import ClaimRow, ClaimsReport, claims_report
from .homology import betti, boundary_squared, build_complex
from .loday import LodayComplex, loday_boundary
from .spec import FLAVORS, WEIGHT_MODES, ComplexSpec

__all__ = (
    "FLAVORS",
    "WEIGHT_MODES",
    "BracketTable",
    "ChainComplex",
    "ChevalleyEilenbergComplex",
    "ClaimRow",
    "ClaimsReport",
    "ComplexSpec",
    "Convention",
    "LodayComplex",
    "betti",
    "boundary_squared",
    "build_complex",
    "ce_boundary",
    "claims_report",
    "loday_boundary",
)
