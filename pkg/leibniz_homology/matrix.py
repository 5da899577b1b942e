"""
Sparse exact matrices.

A ``SparseMatrix`` stores column-major COO triplets with no explicit zeros
and no duplicates. Integer matrices (every boundary of the algebras built
here) keep ``int64`` data so they can be handed to scipy for modular work;
anything else keeps ``Fraction`` objects.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from .exceptions import AlgebraMismatch, BudgetExceeded


#: Rough bytes per stored nonzero (row index, column index, value).
BYTES_PER_ENTRY = 24

#: Passes of singleton stripping before the remainder is handed on.
PEEL_ROUNDS = 64


def _as_exact(value) -> Fraction | int:
    if isinstance(value, (int, np.integer)):
        return int(value)
    frac = Fraction(value)
    return frac.numerator if frac.denominator == 1 else frac


class SparseMatrix:
    """
    Exact sparse matrix in canonical column-major triplet form.
    """

    __slots__ = ("shape", "rows", "cols", "data")

    def __init__(
        self,
        rows: np.ndarray,
        cols: np.ndarray,
        data: np.ndarray,
        shape: Tuple[int, int],
    ):
        self.rows = rows
        self.cols = cols
        self.data = data
        self.shape = (int(shape[0]), int(shape[1]))

    # -----------------------------------------------------
    # Construction
    # -----------------------------------------------------

    @classmethod
    def zeros(cls, shape: Tuple[int, int]) -> "SparseMatrix":
        empty = np.zeros(0, dtype=np.int64)
        return cls(empty, empty.copy(), empty.copy(), shape)

    @classmethod
    def from_triplets(
        cls,
        rows: Sequence[int] | np.ndarray,
        cols: Sequence[int] | np.ndarray,
        data: Sequence | np.ndarray,
        shape: Tuple[int, int],
    ) -> "SparseMatrix":
        """
        Build from possibly duplicated triplets; duplicates are summed and
        zeros dropped.
        """
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        m, n = shape

        if rows.size and (
            rows.min() < 0 or rows.max() >= m or cols.min() < 0 or cols.max() >= n
        ):
            raise AlgebraMismatch("triplet index out of range")

        data = np.asarray(data)
        if data.dtype != object and np.issubdtype(data.dtype, np.integer):
            coo = sp.coo_matrix(
                (data.astype(np.int64), (rows, cols)), shape=(m, n)
            ).tocsc()
            coo.sum_duplicates()
            coo.eliminate_zeros()
            coo = coo.tocoo()
            order = np.lexsort((coo.row, coo.col))
            return cls(
                coo.row[order].astype(np.int64),
                coo.col[order].astype(np.int64),
                coo.data[order].astype(np.int64),
                shape,
            )

        acc: Dict[Tuple[int, int], Fraction] = defaultdict(Fraction)
        for r, c, v in zip(rows.tolist(), cols.tolist(), data.tolist()):
            acc[(c, r)] += Fraction(v)
        return cls._from_accumulator(acc, shape)

    @classmethod
    def from_columns(
        cls, columns: Iterable[Mapping[int, object]], nrows: int
    ) -> "SparseMatrix":
        """
        Build from an iterable of sparse columns ``{row: value}``.
        """
        acc: Dict[Tuple[int, int], Fraction] = {}
        ncols = 0
        for c, column in enumerate(columns):
            ncols = c + 1
            for r, v in column.items():
                if v:
                    acc[(c, r)] = acc.get((c, r), 0) + v
        return cls._from_accumulator(acc, (nrows, ncols))

    @classmethod
    def _from_accumulator(cls, acc, shape) -> "SparseMatrix":
        items = sorted((key, val) for key, val in acc.items() if val != 0)
        if not items:
            return cls.zeros(shape)

        values = [_as_exact(val) for _, val in items]
        if all(isinstance(v, int) and abs(v) < 2**62 for v in values):
            data = np.array(values, dtype=np.int64)
        else:
            data = np.array([Fraction(v) for v in values], dtype=object)

        cols = np.array([key[0] for key, _ in items], dtype=np.int64)
        rows = np.array([key[1] for key, _ in items], dtype=np.int64)
        m, n = shape
        if rows.max() >= m or cols.max() >= n:
            raise AlgebraMismatch("column entry out of range")
        return cls(rows, cols, data, shape)

    @staticmethod
    def vstack(blocks: Sequence["SparseMatrix"]) -> "SparseMatrix":
        """
        Stack matrices with a common column count on top of each other.
        """
        if not blocks:
            raise AlgebraMismatch("nothing to stack")

        ncols = blocks[0].shape[1]
        if any(b.shape[1] != ncols for b in blocks):
            raise AlgebraMismatch("stacked blocks need equal column counts")

        rows, cols, data, offset = [], [], [], 0
        integral = all(b.is_integral for b in blocks)
        for block in blocks:
            rows.append(block.rows + offset)
            cols.append(block.cols)
            data.append(block.data if integral else block.data.astype(object))
            offset += block.shape[0]

        return SparseMatrix.from_triplets(
            np.concatenate(rows),
            np.concatenate(cols),
            np.concatenate(data),
            (offset, ncols),
        )

    # -----------------------------------------------------
    # Properties
    # -----------------------------------------------------

    @property
    def nnz(self) -> int:
        return int(self.data.size)

    @property
    def is_integral(self) -> bool:
        return self.data.dtype != object

    def is_zero(self) -> bool:
        return self.nnz == 0

    def nbytes(self) -> int:
        return self.nnz * BYTES_PER_ENTRY

    # -----------------------------------------------------
    # Views
    # -----------------------------------------------------

    def column_dicts(self) -> List[Dict[int, Fraction | int]]:
        out: List[Dict[int, Fraction | int]] = [dict() for _ in range(self.shape[1])]
        for r, c, v in zip(self.rows.tolist(), self.cols.tolist(), self.data.tolist()):
            out[c][r] = v
        return out

    def row_dicts(self) -> Dict[int, Dict[int, Fraction | int]]:
        out: Dict[int, Dict[int, Fraction | int]] = defaultdict(dict)
        for r, c, v in zip(self.rows.tolist(), self.cols.tolist(), self.data.tolist()):
            out[r][c] = v
        return dict(out)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.shape, dtype=object)
        for r, c, v in zip(self.rows.tolist(), self.cols.tolist(), self.data.tolist()):
            dense[r, c] = v
        return dense

    def to_modp(self, p: int) -> sp.csr_matrix:
        """
        Reduce entries modulo ``p`` into an int64 CSR matrix.
        """
        if self.is_integral:
            data = np.mod(self.data, p)
        else:
            data = np.array(
                [
                    (v.numerator % p) * pow(v.denominator, -1, p) % p
                    for v in map(Fraction, self.data.tolist())
                ],
                dtype=np.int64,
            )
        mat = sp.csr_matrix((data, (self.rows, self.cols)), shape=self.shape)
        mat.eliminate_zeros()
        return mat

    # -----------------------------------------------------
    # Structured elimination
    # -----------------------------------------------------

    def peel_singletons(self, max_rounds: int = PEEL_ROUNDS) -> Tuple[int, "SparseMatrix"]:
        """
        Strip entries that sit alone in their column or row.

        Such an entry clears its row (or column) by one elimination step
        that touches nothing else, so

            rank(A) = pivots + rank(rest)

        over every field in which the stripped entries are nonzero. Rows
        and columns left empty are dropped from ``rest``.
        """
        m, n = self.shape
        rows, cols = self.rows, self.cols
        live = np.ones(self.nnz, dtype=bool)
        row_gone = np.zeros(m, dtype=bool)
        col_gone = np.zeros(n, dtype=bool)
        pivots = 0

        for _ in range(max_rounds):
            found = 0
            for line, cross, line_gone, cross_gone in (
                (cols, rows, col_gone, row_gone),
                (rows, cols, row_gone, col_gone),
            ):
                idx = np.flatnonzero(live)
                if not idx.size:
                    break
                counts = np.bincount(line[idx], minlength=len(line_gone))
                alone = idx[counts[line[idx]] == 1]
                if not alone.size:
                    continue
                # one pivot per crossing line
                _, first = np.unique(cross[alone], return_index=True)
                chosen = alone[first]
                line_gone[line[chosen]] = True
                cross_gone[cross[chosen]] = True
                live &= ~(row_gone[rows] | col_gone[cols])
                found += len(chosen)
            pivots += found
            if not found:
                break

        keep = np.flatnonzero(live)
        if not keep.size:
            return pivots, SparseMatrix.zeros((0, 0))
        row_ids, local_rows = np.unique(rows[keep], return_inverse=True)
        col_ids, local_cols = np.unique(cols[keep], return_inverse=True)
        rest = SparseMatrix(
            local_rows.astype(np.int64),
            local_cols.astype(np.int64),
            self.data[keep],
            (len(row_ids), len(col_ids)),
        )
        return pivots, rest

    # -----------------------------------------------------
    # Arithmetic
    # -----------------------------------------------------

    def apply(self, vector: Mapping[int, object]) -> Dict[int, Fraction | int]:
        """
        Exact matrix-vector product on a sparse ``{column: value}`` vector.
        """
        columns = self._column_index()
        out: Dict[int, Fraction | int] = defaultdict(int)
        for c, x in vector.items():
            if not x:
                continue
            for r, v in columns.get(c, ()):
                out[r] += v * x
        return {r: v for r, v in out.items() if v != 0}

    def _column_index(self) -> Dict[int, List[Tuple[int, object]]]:
        index: Dict[int, List[Tuple[int, object]]] = defaultdict(list)
        for r, c, v in zip(self.rows.tolist(), self.cols.tolist(), self.data.tolist()):
            index[c].append((r, v))
        return index

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        """
        Exact product ``self @ other``.
        """
        if self.shape[1] != other.shape[0]:
            raise AlgebraMismatch(
                f"cannot multiply {self.shape} by {other.shape}"
            )

        if self.is_integral and other.is_integral:
            left = sp.csr_matrix((self.data, (self.rows, self.cols)), shape=self.shape)
            right = sp.csr_matrix((other.data, (other.rows, other.cols)), shape=other.shape)
            prod = (left @ right).tocoo()
            return SparseMatrix.from_triplets(
                prod.row, prod.col, prod.data.astype(np.int64), prod.shape
            )

        rows = self.row_dicts()
        columns = other.column_dicts()
        acc: Dict[Tuple[int, int], Fraction] = {}
        for c, column in enumerate(columns):
            for r, row in rows.items():
                total = sum(
                    (row[j] * v for j, v in column.items() if j in row), Fraction(0)
                )
                if total:
                    acc[(c, r)] = total
        return SparseMatrix._from_accumulator(acc, (self.shape[0], other.shape[1]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.rows, other.rows)
            and np.array_equal(self.cols, other.cols)
            and [Fraction(v) for v in self.data.tolist()]
            == [Fraction(v) for v in other.data.tolist()]
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"SparseMatrix(shape={self.shape}, nnz={self.nnz})"


class StreamedMatrix:
    """
    Integer matrix available only as a stream of column blocks.

    ``block_factory(start, stop)`` must return the ``SparseMatrix`` of
    columns ``start..stop-1`` with the full row range (local column
    indices). Used by the black-box backend when materializing the whole
    matrix would exceed the memory cap.
    """

    __slots__ = ("shape", "_factory", "block_cols", "nnz_estimate")

    def __init__(
        self,
        shape: Tuple[int, int],
        block_factory: Callable[[int, int], SparseMatrix],
        *,
        block_cols: int = 65536,
        nnz_estimate: int = 0,
    ):
        self.shape = (int(shape[0]), int(shape[1]))
        self._factory = block_factory
        self.block_cols = block_cols
        self.nnz_estimate = nnz_estimate

    def blocks(self) -> Iterator[Tuple[int, SparseMatrix]]:
        for start in range(0, self.shape[1], self.block_cols):
            stop = min(start + self.block_cols, self.shape[1])
            yield start, self._factory(start, stop)

    def materialize(self, memory_cap: int) -> SparseMatrix:
        if self.nnz_estimate * BYTES_PER_ENTRY > memory_cap:
            raise BudgetExceeded(
                "streamed matrix too large to materialize",
                stats={"shape": self.shape, "nnz_estimate": self.nnz_estimate},
            )
        rows, cols, data = [], [], []
        for start, block in self.blocks():
            rows.append(block.rows)
            cols.append(block.cols + start)
            data.append(block.data)
        if not rows:
            return SparseMatrix.zeros(self.shape)
        return SparseMatrix.from_triplets(
            np.concatenate(rows), np.concatenate(cols), np.concatenate(data), self.shape
        )

    def __repr__(self) -> str:
        return f"StreamedMatrix(shape={self.shape}, block_cols={self.block_cols})"
