"""
Dense row reduction over a prime field with int64 numpy arrays.

Entries stay below ``p < 2**31`` so every product of two residues fits in
int64 before it is reduced.
"""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from ..exceptions import BudgetExceeded, ConfigurationError
from ..matrix import SparseMatrix
from .base import RankBackend, RankRun


logger = logging.getLogger(__name__)

MAX_PRIME = 2**31


def rank_dense_modp(A: np.ndarray, p: int) -> int:
    """
    Rank of a dense int64 matrix over GF(p); ``A`` is overwritten.
    """
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break

        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue

        pivot = r + int(nz[0])
        if pivot != r:
            A[[r, pivot], :] = A[[pivot, r], :]

        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = (A[r, c:] * inv) % p

        below = r + 1 + np.flatnonzero(A[r + 1:, c])
        if below.size:
            factors = A[below, c][:, None]
            A[below, c:] = (A[below, c:] - factors * A[r, c:][None, :]) % p

        r += 1
    return r


class DenseModularBackend(RankBackend):
    """
    Dense echelon over GF(p) for small boundary blocks.
    """

    name = "dense-echelon"
    field = "modular"

    def run(self, matrix: SparseMatrix, prime: Optional[int] = None) -> RankRun:
        if prime is None or not 2 <= prime < MAX_PRIME:
            raise ConfigurationError("dense modular rank needs a prime below 2**31")

        if matrix.is_zero():
            return RankRun(0)

        m, n = matrix.shape
        if m * n * 8 > self.memory_cap:
            raise BudgetExceeded(
                "dense matrix would exceed the memory cap",
                stats={"shape": matrix.shape},
            )

        dense = matrix.to_modp(prime).toarray().astype(np.int64)
        # eliminate along the shorter side
        if m > n:
            dense = np.ascontiguousarray(dense.T)

        result = rank_dense_modp(dense, prime)
        logger.debug("dense rank %s mod %d = %d", matrix.shape, prime, result)
        return RankRun(result, {"shape": matrix.shape, "prime": prime})
