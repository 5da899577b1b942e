"""
The Loday complex T*(L) of a Lie algebra viewed as a Leibniz algebra.

d(g_1⊗…⊗g_k) = sum_{i<j} (-1)^j g_1⊗…⊗g_{i-1}⊗[g_i,g_j]⊗g_{i+1}⊗…ĝ_j…⊗g_k
"""

from typing import List

import numpy as np

from ..algebras import LieAlgebra
from ..exceptions import BudgetExceeded
from ..matrix import SparseMatrix
from ..multilinear import TensorSpace
from .base import ChainComplex, Triplets, _concat
from .spec import EAGER_COLUMNS, ComplexSpec


class LodayComplex(ChainComplex):
    flavor = "loday"

    def space(self, k: int) -> TensorSpace:
        return TensorSpace(self.algebra, k)

    def _terms(self, k: int, digits: np.ndarray) -> Triplets:
        target = self.space(k - 1)
        parts: List[Triplets] = []
        for p in range(k):
            for q in range(p + 1, k):
                sign = -1 if q % 2 == 0 else 1  # (-1)^j with j = q + 1
                source, c, coef = self.table.expand(digits[:, p], digits[:, q])
                if not len(source):
                    continue
                new = np.delete(digits[source], q, axis=1)
                new[:, p] = c
                parts.append((source, target.rank_array(new), sign * coef))
        return _concat(parts, self.table.coefs)


def loday_boundary(algebra: LieAlgebra, k: int) -> SparseMatrix:
    """
    Matrix of d_k: L^{⊗k} -> L^{⊗(k-1)}; d_1 is the zero map to scalars.

    Raises:
        BudgetExceeded: dim^k exceeds the eager column cap (stream instead)
    """
    columns = algebra.dim ** k
    if columns > EAGER_COLUMNS:
        raise BudgetExceeded(
            f"L^(⊗{k}) has {columns} columns; use a streamed homology run",
            stats={"k": k, "columns": columns, "cap": EAGER_COLUMNS},
        )
    spec = ComplexSpec(algebra=algebra, flavor="loday", max_degree=max(k, 1))
    return LodayComplex(spec).boundary(k)
