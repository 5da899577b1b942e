"""
Black-box rank over GF(p) from matrix-vector products only.

The rank of ``A`` (m x n) equals the rank of the symmetric preconditioned
operator ``B = D1 A^T D2 A D1`` for random nonsingular diagonals ``D1, D2``
(with high probability over a large field). The minimal polynomial of
``B`` is recovered from the scalar sequence ``u . B^i v`` by
Berlekamp-Massey; with the preconditioning it is ``x * f(x)`` when ``B``
is singular and ``f(x)`` otherwise, and ``deg f`` is the rank.

The operator is applied on the smaller side: for a wide matrix the
roles of ``A`` and ``A^T`` swap.
"""

from __future__ import annotations

import logging
from typing import Callable, Iterable, Iterator, List, Optional, Tuple, Union

import numpy as np
import scipy.sparse as sp

from ..exceptions import BudgetExceeded, ConfigurationError
from ..matrix import BYTES_PER_ENTRY, SparseMatrix, StreamedMatrix
from .base import RankBackend, RankRun


logger = logging.getLogger(__name__)

#: Consecutive zero discrepancies after which Berlekamp-Massey stops early.
EARLY_STOP = 20

Operator = Callable[[np.ndarray], np.ndarray]


# ==========================================================
# Arithmetic helpers
# ==========================================================

def _matvec_mod(mat: sp.csr_matrix, x: np.ndarray, p: int, split: bool) -> np.ndarray:
    """
    ``mat @ x mod p`` without int64 overflow.

    With ``split`` the vector is cut into 16-bit halves so that every row
    sum stays far below 2**63 whatever the row weight.
    """
    if not split:
        return np.mod(mat @ x, p)
    lo = x & 0xFFFF
    hi = x >> 16
    return np.mod(np.mod(mat @ lo, p) + (np.mod(mat @ hi, p) << 16), p)


def _signed_modp(matrix: SparseMatrix, p: int) -> sp.csr_matrix:
    """
    CSR residues in ``(-p/2, p/2]``; boundary entries stay tiny this way.
    """
    csr = matrix.to_modp(p)
    csr.data = np.where(csr.data > p // 2, csr.data - p, csr.data)
    return csr


def _dot_mod(u: np.ndarray, w: np.ndarray, p: int) -> int:
    return int(np.mod(u * w, p).sum() % p)


def berlekamp_massey(
    terms: Iterable[int], p: int, *, limit: int, early_stop: int = EARLY_STOP
) -> List[int]:
    """
    Connection polynomial ``C = [1, c1, ..., cL]`` of the shortest linear
    recurrence generating ``terms`` over GF(p).

    Stops after ``limit`` terms, or once ``early_stop`` consecutive terms
    past ``2L`` were predicted correctly. Discrepancies and updates are
    numpy dot products over the live prefix of each polynomial.
    """
    seq = np.zeros(limit, dtype=np.int64)
    C = np.zeros(limit + 1, dtype=np.int64)
    B = np.zeros(limit + 1, dtype=np.int64)
    C[0] = B[0] = 1
    len_c = len_b = 1
    L, shift, b = 0, 1, 1
    quiet = 0

    for i, s in enumerate(terms):
        if i >= limit:
            break
        seq[i] = s % p

        d = int(seq[i])
        if L:
            window = seq[i - L:i][::-1]
            d = (d + int(np.mod(C[1:L + 1] * window, p).sum())) % p

        if d == 0:
            shift += 1
            quiet += 1
            if quiet >= early_stop and i + 1 >= 2 * L:
                break
            continue

        quiet = 0
        coef = d * pow(b, -1, p) % p
        T = C[:len_c].copy()
        stop = shift + len_b
        C[shift:stop] = np.mod(C[shift:stop] - coef * B[:len_b], p)
        len_c = max(len_c, stop)

        if 2 * L <= i:
            L = i + 1 - L
            B[:len(T)] = T
            len_b = len(T)
            b, shift = d, 1
        else:
            shift += 1

    return [int(c) for c in C[: L + 1]]


def rank_from_generator(C: List[int]) -> int:
    """
    Degree of the minimal polynomial ``x^L C(1/x)`` with its x-power removed.
    """
    L = len(C) - 1
    zeros = 0
    while zeros < L and C[L - zeros] == 0:
        zeros += 1
    return L - zeros


# ==========================================================
# Backend
# ==========================================================

class BlackBoxBackend(RankBackend):
    """
    Wiedemann-type rank for matrices too large to eliminate.

    Accepts a ``SparseMatrix`` or a ``StreamedMatrix``; streamed input is
    materialized only when it fits under the memory cap, otherwise the
    column blocks are regenerated for every product.
    """

    name = "blackbox"
    field = "modular"

    def run(
        self,
        matrix: Union[SparseMatrix, StreamedMatrix],
        prime: Optional[int] = None,
    ) -> RankRun:
        if prime is None:
            raise ConfigurationError("black-box rank needs a prime")

        m, n = matrix.shape
        if m == 0 or n == 0:
            return RankRun(0)

        apply_A, apply_AT, streamed = self._operators(matrix, prime)
        rng = np.random.default_rng([self.seed, prime])

        # work on the smaller side
        if n <= m:
            side, inner = n, m
            left, right = apply_A, apply_AT
        else:
            side, inner = m, n
            left, right = apply_AT, apply_A

        d1 = rng.integers(1, prime, size=side, dtype=np.int64)
        d2 = rng.integers(1, prime, size=inner, dtype=np.int64)
        u = rng.integers(0, prime, size=side, dtype=np.int64)
        v = rng.integers(0, prime, size=side, dtype=np.int64)

        def apply_B(x: np.ndarray) -> np.ndarray:
            y = np.mod(d1 * x, prime)
            y = np.mod(d2 * left(y), prime)
            return np.mod(d1 * right(y), prime)

        def krylov() -> Iterator[int]:
            w = v
            while True:
                yield _dot_mod(u, w, prime)
                w = apply_B(w)

        generator = berlekamp_massey(krylov(), prime, limit=2 * side + 2)
        result = min(rank_from_generator(generator), side)

        logger.debug("black-box rank %s mod %d = %d", matrix.shape, prime, result)
        return RankRun(
            result,
            {
                "shape": matrix.shape,
                "prime": prime,
                "side": side,
                "streamed": streamed,
                "generator_degree": len(generator) - 1,
            },
        )

    # --------------------------
    # Operators
    # --------------------------

    def _operators(
        self, matrix: Union[SparseMatrix, StreamedMatrix], p: int
    ) -> Tuple[Operator, Operator, bool]:
        if isinstance(matrix, StreamedMatrix):
            try:
                matrix = matrix.materialize(self.memory_cap)
            except BudgetExceeded:
                logger.debug("streaming %r through every product", matrix)
                return (*self._streamed_operators(matrix, p), True)

        if matrix.nnz * BYTES_PER_ENTRY * 2 > self.memory_cap:
            raise BudgetExceeded(
                "black-box operator would exceed the memory cap",
                stats={"shape": matrix.shape, "nnz": matrix.nnz},
            )

        csr = _signed_modp(matrix, p)
        csr_t = csr.T.tocsr()
        split_a = self._needs_split(csr, p)
        split_t = self._needs_split(csr_t, p)
        return (
            lambda x: _matvec_mod(csr, x, p, split_a),
            lambda y: _matvec_mod(csr_t, y, p, split_t),
            False,
        )

    def _streamed_operators(
        self, matrix: StreamedMatrix, p: int
    ) -> Tuple[Operator, Operator]:
        m, _ = matrix.shape

        def apply_A(x: np.ndarray) -> np.ndarray:
            out = np.zeros(m, dtype=np.int64)
            for start, block in matrix.blocks():
                csr = _signed_modp(block, p)
                stop = start + block.shape[1]
                split = self._needs_split(csr, p)
                out = np.mod(out + _matvec_mod(csr, x[start:stop], p, split), p)
            return out

        def apply_AT(y: np.ndarray) -> np.ndarray:
            parts = []
            for _, block in matrix.blocks():
                csr_t = _signed_modp(block, p).T.tocsr()
                parts.append(_matvec_mod(csr_t, y, p, self._needs_split(csr_t, p)))
            return np.concatenate(parts)

        return apply_A, apply_AT

    @staticmethod
    def _needs_split(csr: sp.csr_matrix, p: int) -> bool:
        if csr.nnz == 0:
            return False
        weight = int(np.diff(csr.indptr).max())
        largest = int(np.abs(csr.data).max())
        return weight * largest * (p - 1) >= 2**63
