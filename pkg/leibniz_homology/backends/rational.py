"""
Exact linear algebra over the rationals, delegated to sympy's
``DomainMatrix`` over ``QQ`` (dense DDM or sparse SDM representation).
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from ..exceptions import BudgetExceeded
from ..matrix import BYTES_PER_ENTRY, SparseMatrix
from .base import RankBackend, RankRun


logger = logging.getLogger(__name__)


def to_qq(value) -> object:
    frac = Fraction(value)
    return QQ(frac.numerator, frac.denominator)


def to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def domain_matrix(matrix: SparseMatrix, *, sparse: bool = True) -> DomainMatrix:
    """
    Convert to a ``DomainMatrix`` over ``QQ``.
    """
    rows: Dict[int, Dict[int, object]] = {}
    for r, row in matrix.row_dicts().items():
        rows[r] = {c: to_qq(v) for c, v in row.items()}
    dm = DomainMatrix(rows, matrix.shape, QQ)
    return dm if sparse else dm.to_dense()


def fraction_rows(dm: DomainMatrix) -> List[Dict[int, Fraction]]:
    """
    Read the rows of a ``DomainMatrix`` back as sparse Fraction dicts.
    """
    sdm = dm.to_sparse().rep
    out: List[Dict[int, Fraction]] = []
    for r in range(dm.shape[0]):
        row = sdm.get(r, {})
        out.append({c: to_fraction(v) for c, v in sorted(row.items()) if v})
    return out


class RationalBackend(RankBackend):
    """
    Rank, kernel and span membership over the rationals.

    Features:
    - Dense echelon for small matrices
    - Sparse (dict-of-dicts) elimination beyond ``dense_below`` columns
    - Kernels in reduced echelon form
    """

    name = "rational-echelon"
    field = "rational"

    def __init__(self, *, memory_cap: int, seed: int = 0, dense_below: int = 512):
        super().__init__(memory_cap=memory_cap, seed=seed)
        self.dense_below = dense_below

    def _check_budget(self, matrix: SparseMatrix) -> None:
        # rational elimination fills in; allow a generous multiple of nnz
        estimate = matrix.nnz * BYTES_PER_ENTRY * 8
        if estimate > self.memory_cap:
            raise BudgetExceeded(
                "rational elimination would exceed the memory cap",
                stats={"shape": matrix.shape, "nnz": matrix.nnz},
            )

    # --------------------------
    # Core Execution
    # --------------------------

    def run(self, matrix: SparseMatrix, prime: Optional[int] = None) -> RankRun:
        if matrix.is_zero():
            return RankRun(0)

        self._check_budget(matrix)
        dense = matrix.shape[1] < self.dense_below
        dm = domain_matrix(matrix, sparse=not dense)
        return RankRun(
            int(dm.rank()),
            {"shape": matrix.shape, "nnz": matrix.nnz, "dense": dense},
        )

    def kernel(self, matrix: SparseMatrix) -> List[Dict[int, Fraction]]:
        """
        Basis of the right null space in reduced echelon form.
        """
        ncols = matrix.shape[1]
        if ncols == 0:
            return []

        if matrix.is_zero():
            return [{j: Fraction(1)} for j in range(ncols)]

        self._check_budget(matrix)
        dm = domain_matrix(matrix)
        null = dm.nullspace()
        if null.shape[0] == 0:
            return []

        reduced, _ = null.rref()
        rows = fraction_rows(reduced)
        return [row for row in rows if row]

    def in_span(
        self,
        basis: Sequence[Mapping[int, object]],
        vector: Mapping[int, object],
        length: int,
    ) -> bool:
        """
        Whether ``vector`` lies in the span of ``basis`` (exact).
        """
        if not any(vector.values()):
            return True
        if not basis:
            return False

        stacked = SparseMatrix.from_columns([*basis, vector], length)
        with_vector = self.rank(stacked)
        without = self.rank(SparseMatrix.from_columns(list(basis), length))
        return with_vector == without

    def solve_square(self, matrix: SparseMatrix) -> List[Dict[int, Fraction]]:
        """
        Inverse of a square invertible matrix, as sparse rows.
        """
        dm = domain_matrix(matrix, sparse=False)
        return fraction_rows(dm.inv())
