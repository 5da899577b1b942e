"""
The Schrodinger and full Galilei algebras and their pieces, derived from
the linear vector-field realization.
"""

from .lie_algebra import Element, LieAlgebra, algebra_info, build_algebra
from .realization import ALGEBRA_NAMES, basis_labels, label_matrix
from .tables import TableCheck, TableReport, check_tables

__all__ = (
    "ALGEBRA_NAMES",
    "Element",
    "LieAlgebra",
    "TableCheck",
    "TableReport",
    "algebra_info",
    "basis_labels",
    "build_algebra",
    "check_tables",
    "label_matrix",
)
