"""
Vectorized boundary assembly shared by the Loday and CE complexes.

Columns are generated from the index codec of the source space: a batch
of column indices is unranked to factor digits, each bracket slot pair is
expanded through a flattened bracket table and the resulting monomials
are ranked in the target space. Nothing but the requested columns is
ever held in memory, so large degrees can be streamed block by block.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from math import comb
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from ..algebras import LieAlgebra
from ..exceptions import AlgebraMismatch, BudgetExceeded, ClosureError, ConfigurationError
from ..matrix import BYTES_PER_ENTRY, SparseMatrix, StreamedMatrix
from ..multilinear import Chain, ModuleSpace
from .spec import ComplexSpec


logger = logging.getLogger(__name__)

#: Columns unranked per batch during assembly.
CHUNK_COLUMNS = 1 << 16

#: Radix separating the weight components inside one int64 key.
WEIGHT_RADIX = 1 << 21

Matrix = SparseMatrix | StreamedMatrix
Triplets = Tuple[np.ndarray, np.ndarray, np.ndarray]


# ==========================================================
# Bracket table
# ==========================================================

class BracketTable:
    """
    Nonzero brackets [e_a, e_b] = sum coef * e_c stored CSR-style under
    the key ``a * dim + b``.
    """

    def __init__(self, algebra: LieAlgebra):
        dim = algebra.dim
        counts = np.zeros(dim * dim, dtype=np.int64)
        targets: List[int] = []
        coefs: List[Fraction] = []
        for a in range(dim):
            for b in range(dim):
                row = algebra.bracket_basis(a, b)
                counts[a * dim + b] = len(row)
                for c, v in sorted(row.items()):
                    targets.append(c)
                    coefs.append(Fraction(v))

        self.dim = dim
        self.offsets = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
        self.targets = np.array(targets, dtype=np.int64)
        self.integral = all(v.denominator == 1 for v in coefs)
        if self.integral:
            self.coefs = np.array([int(v) for v in coefs], dtype=np.int64)
        else:
            self.coefs = np.empty(len(coefs), dtype=object)
            self.coefs[:] = coefs
        self.nnz = len(targets)

    def expand(self, left: np.ndarray, right: np.ndarray) -> Triplets:
        """
        Expand [left[r], right[r]] for every r.

        Returns ``(source, target, coef)``: ``source[t]`` is the position
        of the pair the t-th term came from.
        """
        keys = left * self.dim + right
        starts = self.offsets[keys]
        lengths = self.offsets[keys + 1] - starts
        total = int(lengths.sum())
        if total == 0:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty.copy(), self.coefs[:0]

        source = np.repeat(np.arange(len(keys), dtype=np.int64), lengths)
        first = np.repeat(np.cumsum(lengths) - lengths, lengths)
        picks = np.arange(total, dtype=np.int64) - first + np.repeat(starts, lengths)
        return source, self.targets[picks], self.coefs[picks]

    @property
    def density(self) -> float:
        """
        Average number of terms per ordered basis pair.
        """
        return self.nnz / float(self.dim * self.dim)


def _concat(parts: List[Triplets], dtype_source: np.ndarray) -> Triplets:
    if not parts:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty.copy(), dtype_source[:0]
    rows, cols, data = zip(*parts)
    return np.concatenate(rows), np.concatenate(cols), np.concatenate(data)


# ==========================================================
# Chain complexes
# ==========================================================

class ChainComplex(ABC):
    """
    A graded space ``C_k`` with boundaries ``d_k: C_k -> C_{k-1}``.

    Subclasses describe ``space(k)`` and the boundary terms of a batch of
    column digits; this class turns them into matrices, weight blocks and
    streamed operators.
    """

    flavor: str

    def __init__(self, spec: ComplexSpec):
        self.spec = spec
        self.algebra = spec.algebra
        self.table = BracketTable(spec.algebra)
        self._factor_keys = self._weight_vector(spec.algebra)
        self._keys: Dict[int, np.ndarray] = {}
        self._blocks: Dict[int, Dict[int, np.ndarray]] = {}

    # -----------------------------------------------------
    # Shape
    # -----------------------------------------------------

    @abstractmethod
    def space(self, k: int) -> ModuleSpace:
        raise NotImplementedError

    @property
    def top_degree(self) -> Optional[int]:
        """
        Highest nonzero degree, or None when unbounded.
        """
        return None

    def dim(self, k: int) -> int:
        if k < 0 or (self.top_degree is not None and k > self.top_degree):
            return 0
        return self.space(k).dim

    @abstractmethod
    def _terms(self, k: int, digits: np.ndarray) -> Triplets:
        """
        ``(source, target_row, coef)`` of d_k on the monomials ``digits``.
        """
        raise NotImplementedError

    def _check_degree(self, k: int) -> None:
        if k < 1:
            raise ConfigurationError("boundaries start at degree 1")
        if self.top_degree is not None and k > self.top_degree:
            raise ConfigurationError(
                f"degree {k} exceeds the top degree {self.top_degree}"
            )

    # -----------------------------------------------------
    # Assembly
    # -----------------------------------------------------

    def boundary_triplets(self, k: int, columns: np.ndarray) -> Triplets:
        """
        ``(row, local_column, value)`` of d_k restricted to ``columns``.
        """
        self._check_degree(k)
        columns = np.asarray(columns, dtype=np.int64)
        space = self.space(k)
        parts: List[Triplets] = []
        for start in range(0, len(columns), CHUNK_COLUMNS):
            batch = columns[start:start + CHUNK_COLUMNS]
            source, rows, data = self._terms(k, space.unrank_array(batch))
            parts.append((rows, source + start, data))
        return _concat(parts, self.table.coefs)

    def boundary(self, k: int, columns: Optional[np.ndarray] = None) -> SparseMatrix:
        """
        Matrix of d_k, restricted to ``columns`` when given.
        """
        self._check_degree(k)
        if columns is None:
            columns = np.arange(self.space(k).dim, dtype=np.int64)
        rows, cols, data = self.boundary_triplets(k, columns)
        return SparseMatrix.from_triplets(
            rows, cols, data, (self.space(k - 1).dim, len(columns))
        )

    def apply(self, k: int, chain: Chain) -> Chain:
        """
        d_k of a chain of ``space(k)``.
        """
        if chain.space != self.space(k):
            raise AlgebraMismatch(f"chain does not live in {self.space(k)!r}")
        target = self.space(k - 1)
        if chain.is_zero():
            return Chain.zero(target)
        columns = np.array(sorted(chain.entries), dtype=np.int64)
        matrix = self.boundary(k, columns)
        image = matrix.apply({c: chain.entries[int(g)] for c, g in enumerate(columns)})
        return Chain(target, image)

    def estimate_nnz(self, k: int, ncols: int) -> int:
        return int(ncols * comb(k + 1, 2) * self.table.density) + 1

    # -----------------------------------------------------
    # Weight grading
    # -----------------------------------------------------

    @staticmethod
    def _weight_vector(algebra: LieAlgebra) -> np.ndarray:
        """
        One int64 key per basis vector; keys add up over factors.
        """
        weights = algebra.weights()
        keys = np.zeros(algebra.dim, dtype=np.int64)
        for i, row in enumerate(weights):
            for comp, w in enumerate(row):
                if w.denominator != 1:
                    raise ClosureError(f"non-integral weight on {algebra.basis[i].name}")
                keys[i] += int(w) * WEIGHT_RADIX**comp
        return keys

    def weight_keys(self, k: int) -> np.ndarray:
        """
        Weight key of every monomial of ``space(k)`` (0 is weight zero).
        """
        if k not in self._keys:
            space = self.space(k)
            if not self._factor_keys.any():
                keys = np.zeros(space.dim, dtype=np.int64)
            else:
                chunks = []
                for start in range(0, space.dim, CHUNK_COLUMNS):
                    stop = min(start + CHUNK_COLUMNS, space.dim)
                    digits = space.unrank_array(np.arange(start, stop, dtype=np.int64))
                    chunks.append(self._factor_keys[digits].sum(axis=1))
                keys = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int64)
            self._keys[k] = keys
        return self._keys[k]

    def weight_blocks(self, k: int) -> Dict[int, np.ndarray]:
        """
        Sorted column indices of ``space(k)`` grouped by weight key,
        restricted to weight zero under ``weights='zero'``.
        """
        if k not in self._blocks:
            keys = self.weight_keys(k)
            if self.spec.weights == "zero":
                blocks = {0: np.flatnonzero(keys == 0)}
            else:
                values, inverse = np.unique(keys, return_inverse=True)
                order = np.argsort(inverse, kind="stable")
                bounds = np.cumsum(np.bincount(inverse, minlength=len(values)))
                blocks = {
                    int(v): order[lo:hi]
                    for v, lo, hi in zip(values, np.concatenate([[0], bounds[:-1]]), bounds)
                }
            self._blocks[k] = blocks
        return self._blocks[k]

    def graded_dim(self, k: int) -> int:
        """
        Dimension of degree k counted over the computed weight blocks.
        """
        if self.dim(k) == 0:
            return 0
        return int(sum(len(cols) for cols in self.weight_blocks(k).values()))

    # -----------------------------------------------------
    # Blocks
    # -----------------------------------------------------

    def _localize(self, rows: np.ndarray, row_ids: np.ndarray) -> np.ndarray:
        local = np.searchsorted(row_ids, rows)
        if rows.size and (
            local.max() >= len(row_ids) or not np.array_equal(row_ids[local], rows)
        ):
            raise ClosureError("boundary does not preserve the weight grading")
        return local

    def _block(self, k: int, columns: np.ndarray, row_ids: np.ndarray) -> SparseMatrix:
        rows, cols, data = self.boundary_triplets(k, columns)
        return SparseMatrix.from_triplets(
            self._localize(rows, row_ids), cols, data, (len(row_ids), len(columns))
        )

    def block_matrices(self, k: int, memory_cap: int) -> Iterator[Tuple[int, Matrix]]:
        """
        Yield ``(weight_key, matrix)`` for each nonzero weight block of d_k.

        Blocks larger than the eager column cap are streamed; blocks past
        the streaming cap raise.

        Raises:
            BudgetExceeded: a block exceeds the streaming cap
        """
        self._check_degree(k)
        sources = self.weight_blocks(k)
        targets = self.weight_blocks(k - 1)

        for key, columns in sources.items():
            row_ids = targets.get(key)
            if row_ids is None or not len(row_ids) or not len(columns):
                continue

            ncols = len(columns)
            nnz = self.estimate_nnz(k, ncols)
            if ncols > self.spec.streamed_columns:
                raise BudgetExceeded(
                    f"d_{k} block with {ncols} columns exceeds the streaming cap",
                    stats={"k": k, "columns": ncols, "cap": self.spec.streamed_columns},
                )

            if ncols <= self.spec.eager_columns and nnz * BYTES_PER_ENTRY <= memory_cap:
                yield key, self._block(k, columns, row_ids)
                continue

            logger.debug("streaming d_%d block %d with %d columns", k, key, ncols)

            def factory(start: int, stop: int, columns=columns, row_ids=row_ids) -> SparseMatrix:
                return self._block(k, columns[start:stop], row_ids)

            yield key, StreamedMatrix(
                (len(row_ids), ncols), factory, nnz_estimate=nnz
            )

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec.describe()})"
