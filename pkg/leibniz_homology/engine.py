import logging
from dataclasses import replace
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import nextprime

from .backends import (
    BlackBoxBackend,
    DenseModularBackend,
    RankBackend,
    RationalBackend,
    SparseModularBackend,
)
from .exceptions import BudgetExceeded, HomologyError, PrimeDisagreement
from .matrix import BYTES_PER_ENTRY, SparseMatrix, StreamedMatrix
from .types import DegreeRow, RankCertificate, RankStrategy


logger = logging.getLogger(__name__)

PRIME_LOW = 2**30
PRIME_HIGH = 2**31

#: Fresh primes drawn after two primes disagree.
RETRY_PRIMES = 3

Matrix = Union[SparseMatrix, StreamedMatrix]


class HomologyEngine:
    """
    Exact rank engine shared by every homology and invariant computation.

    Picks a rank method from the strategy ladder, runs one job per prime,
    certifies agreement and retries with fresh primes when they disagree.
    """

    def __init__(
        self,
        *,
        primes: int = 2,
        seed: int = 0,
        memory_cap: int = 8 * 2**30,
        strategy: str = "auto",
        field: str = "modular",
        dense_below: int = 512,
        sparse_below: int = 200_000,
        sparse_side_below: int = 20_000,
        workers: int = 1,
        on_degree: Optional[Callable[[DegreeRow], None]] = None,
        on_error: Optional[Callable[[Exception], None]] = None,
    ):
        # ---------------- Validation ----------------
        self.strategy = RankStrategy(
            primes=primes,
            seed=seed,
            memory_cap=memory_cap,
            strategy=strategy,
            field=field,
            dense_below=dense_below,
            sparse_below=sparse_below,
            sparse_side_below=sparse_side_below,
            workers=workers,
        )

        # ---------------- Hooks ----------------
        self.on_degree = on_degree
        self.on_error = on_error

        # ---------------- Backends ----------------
        cap = self.strategy.memory_cap
        self.rational = RationalBackend(
            memory_cap=cap, seed=seed, dense_below=dense_below
        )
        self._modular: Dict[str, RankBackend] = {
            "dense": DenseModularBackend(memory_cap=cap, seed=seed),
            "sparse": SparseModularBackend(memory_cap=cap, seed=seed),
            "blackbox": BlackBoxBackend(memory_cap=cap, seed=seed),
        }

        self._prime_pool: List[int] = []
        self._prime_source = self._prime_stream()

    @classmethod
    def from_strategy(cls, strategy: RankStrategy, **hooks) -> "HomologyEngine":
        return cls(
            primes=strategy.primes,
            seed=strategy.seed,
            memory_cap=strategy.memory_cap,
            strategy=strategy.strategy,
            field=strategy.field,
            dense_below=strategy.dense_below,
            sparse_below=strategy.sparse_below,
            sparse_side_below=strategy.sparse_side_below,
            workers=strategy.workers,
            **hooks,
        )

    # =====================================================
    # Primes
    # =====================================================

    def _prime_stream(self) -> Iterator[int]:
        rng = np.random.default_rng(self.strategy.seed)
        seen = set()
        while True:
            start = int(rng.integers(PRIME_LOW, PRIME_HIGH - 2**16))
            p = int(nextprime(start))
            if p < PRIME_HIGH and p not in seen:
                seen.add(p)
                yield p

    def prime(self, index: int) -> int:
        """
        The ``index``-th prime of this engine's deterministic sequence.
        """
        while len(self._prime_pool) <= index:
            self._prime_pool.append(next(self._prime_source))
        return self._prime_pool[index]

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(self.prime(i) for i in range(self.strategy.primes))

    # =====================================================
    # Internal helpers
    # =====================================================

    def _handle_failure(self, exc: Exception) -> None:
        if self.on_error:
            self.on_error(exc)

    def _method_for(self, matrix: Matrix) -> str:
        m, n = matrix.shape
        method = self.strategy.method_for(n, min(m, n))
        if isinstance(matrix, StreamedMatrix) and self.strategy.strategy == "auto":
            return "blackbox"
        return method

    def _modular_ranks(
        self, backend: RankBackend, matrix: Matrix, primes: Sequence[int]
    ) -> Dict[int, int]:
        if self.strategy.workers == 1 or len(primes) == 1:
            runs = [backend.run(matrix, p) for p in primes]
        else:
            with ThreadPoolExecutor(max_workers=self.strategy.workers) as pool:
                runs = list(pool.map(lambda p: backend.run(matrix, p), primes))

        for p, run in zip(primes, runs):
            logger.debug("%s mod %d: %s", backend.name, p, run.stats)
        return {p: run.rank for p, run in zip(primes, runs)}

    def _materialized(self, matrix: Matrix) -> SparseMatrix:
        if isinstance(matrix, StreamedMatrix):
            return matrix.materialize(self.strategy.memory_cap)
        return matrix

    def _peeled(self, matrix: SparseMatrix) -> Tuple[int, SparseMatrix]:
        if matrix.is_zero():
            return 0, matrix
        # stripped pivots must stay units modulo every prime drawn
        if self.strategy.field == "modular" and not (
            matrix.is_integral and int(np.abs(matrix.data).max()) < PRIME_LOW
        ):
            return 0, matrix
        pivots, rest = matrix.peel_singletons()
        if pivots:
            logger.debug(
                "peeled %d pivots off %s, %s remains", pivots, matrix.shape, rest.shape
            )
        return pivots, rest

    # =====================================================
    # Ranks
    # =====================================================

    def rank(self, matrix: Matrix) -> RankCertificate:
        """
        Certified rank of ``matrix`` under this engine's strategy.

        Raises:
            BudgetExceeded: the chosen method outgrew the memory cap
            PrimeDisagreement: fresh primes still disagreed
        """
        try:
            return self._rank(matrix)
        except HomologyError as exc:
            self._handle_failure(exc)
            raise

    def _rank(self, matrix: Matrix) -> RankCertificate:
        if isinstance(matrix, SparseMatrix) and matrix.is_zero():
            return RankCertificate(rank=0, method="zero", field=self.strategy.field)

        if self.strategy.field == "rational":
            pivots, rest = self._peeled(self._materialized(matrix))
            value = pivots + self.rational.rank(rest)
            return RankCertificate(
                rank=value, method=self.rational.name, field="rational", peeled=pivots
            )

        # explicit strategies run their backend on the whole matrix
        pivots = 0
        auto = self.strategy.strategy == "auto"
        if auto and (not isinstance(matrix, StreamedMatrix) or self._fits(matrix)):
            pivots, matrix = self._peeled(self._materialized(matrix))
            if matrix.is_zero():
                return RankCertificate(
                    rank=pivots,
                    method="peeled" if pivots else "zero",
                    field="modular",
                    peeled=pivots,
                )

        method = self._method_for(matrix)
        if method != "blackbox":
            matrix = self._materialized(matrix)
        logger.debug("rank %s via %s after %d pivots", matrix.shape, method, pivots)
        try:
            certificate = self._certify(method, matrix)
        except BudgetExceeded as exc:
            if not auto or method == "blackbox":
                raise
            logger.warning(
                "%s elimination aborted (%s); falling back to black-box",
                method,
                exc.stats,
            )
            certificate = self._certify("blackbox", matrix)
        return replace(certificate, rank=certificate.rank + pivots, peeled=pivots)

    def _fits(self, matrix: StreamedMatrix) -> bool:
        return matrix.nnz_estimate * BYTES_PER_ENTRY <= self.strategy.memory_cap

    def _certify(self, method: str, matrix: Matrix) -> RankCertificate:
        backend = self._modular[method]
        primes = self.primes
        ranks = self._modular_ranks(backend, matrix, primes)

        if len(set(ranks.values())) == 1:
            return RankCertificate(
                rank=next(iter(ranks.values())),
                method=backend.name,
                field="modular",
                primes_used=tuple(primes),
                agreement=True,
            )

        logger.warning("primes disagree on rank %s: %s; retrying", matrix.shape, ranks)
        offset = len(self._prime_pool)
        fresh = tuple(self.prime(offset + i) for i in range(RETRY_PRIMES))
        retry = self._modular_ranks(backend, matrix, fresh)

        if len(set(retry.values())) != 1:
            raise PrimeDisagreement(
                f"rank of {matrix.shape} disagrees across primes",
                ranks={**ranks, **retry},
            )

        # an unlucky prime can only lose rank
        value = next(iter(retry.values()))
        if value < max(ranks.values()):
            raise PrimeDisagreement(
                f"fresh primes undercut an earlier rank of {matrix.shape}",
                ranks={**ranks, **retry},
            )

        return RankCertificate(
            rank=value,
            method=backend.name,
            field="modular",
            primes_used=fresh,
            agreement=True,
            retries=1,
        )

    # =====================================================
    # Kernels
    # =====================================================

    def kernel(self, matrix: SparseMatrix) -> List[Dict[int, Fraction]]:
        """
        Exact rational kernel basis in reduced echelon form.
        """
        try:
            return self.rational.kernel(matrix)
        except HomologyError as exc:
            self._handle_failure(exc)
            raise

    def in_span(
        self,
        basis: Sequence[Mapping[int, object]],
        vector: Mapping[int, object],
        length: int,
    ) -> bool:
        return self.rational.in_span(basis, vector, length)

    # =====================================================
    # Hooks
    # =====================================================

    def report_degree(self, row: DegreeRow) -> None:
        logger.info(
            "k=%d dim=%d rank_dk=%s rank_dk1=%s betti=%s",
            row.k,
            row.dim,
            row.rank_dk,
            row.rank_dk1,
            row.betti,
        )
        if self.on_degree:
            self.on_degree(row)
