import logging
import time
from typing import Dict, Iterable, List, Optional, Tuple

from ..engine import HomologyEngine
from ..exceptions import BudgetExceeded, ConfigurationError
from ..matrix import SparseMatrix
from ..types import DegreeRow, HomologyReport, RankCertificate, RankStrategy
from .base import ChainComplex
from .chevalley_eilenberg import ChevalleyEilenbergComplex, Convention
from .loday import LodayComplex
from .spec import ComplexSpec


logger = logging.getLogger(__name__)


def build_complex(
    spec: ComplexSpec, convention: Convention = Convention.PRINTED
) -> ChainComplex:
    if spec.flavor == "loday":
        return LodayComplex(spec)
    return ChevalleyEilenbergComplex(spec, convention)


class _RankCache:
    """
    Block-summed boundary ranks, computed at most once per degree.
    """

    def __init__(self, complex_: ChainComplex, engine: HomologyEngine):
        self.complex = complex_
        self.engine = engine
        self._ranks: Dict[int, Tuple[int, Tuple[RankCertificate, ...]]] = {}

    def rank(self, k: int) -> Tuple[int, Tuple[RankCertificate, ...]]:
        top = self.complex.top_degree
        if k < 1 or (top is not None and k > top):
            return 0, ()

        if k not in self._ranks:
            total, certificates = 0, []
            cap = self.engine.strategy.memory_cap
            for key, matrix in self.complex.block_matrices(k, cap):
                certificate = self.engine.rank(matrix)
                total += certificate.rank
                certificates.append(certificate)
            logger.debug(
                "rank d_%d = %d over %d weight blocks", k, total, len(certificates)
            )
            self._ranks[k] = (total, tuple(certificates))
        return self._ranks[k]


def betti(
    spec: ComplexSpec,
    degrees: Optional[Iterable[int]] = None,
    strategy: Optional[RankStrategy] = None,
    *,
    engine: Optional[HomologyEngine] = None,
) -> HomologyReport:
    """
    Betti numbers of a complex, one ``DegreeRow`` per requested degree.

    betti_k = dim C_k - rank d_k - rank d_{k+1}, with both ranks summed
    over weight blocks. A degree whose boundary outgrows the budget is
    reported as skipped instead of aborting the run.

    Args:
        spec: the complex
        degrees: degrees to compute (defaults to 0..spec.max_degree)
        strategy: rank strategy used to build an engine when none is given
        engine: a shared engine (keeps its primes and hooks)

    Raises:
        ConfigurationError: a degree outside 0..spec.max_degree
        PrimeDisagreement: fresh primes still disagreed on some rank
    """
    if engine is None:
        engine = HomologyEngine.from_strategy(strategy or RankStrategy())

    degrees = list(range(spec.max_degree + 1) if degrees is None else degrees)
    if any(k < 0 or k > spec.max_degree for k in degrees):
        raise ConfigurationError(f"degrees must lie in 0..{spec.max_degree}")

    started = time.perf_counter()
    complex_ = build_complex(spec)
    ranks = _RankCache(complex_, engine)
    rows: List[DegreeRow] = []

    for k in degrees:
        dim = complex_.graded_dim(k)
        try:
            rank_dk, certs_k = ranks.rank(k)
            rank_dk1, certs_k1 = ranks.rank(k + 1)
        except BudgetExceeded as exc:
            logger.warning("degree %d skipped: %s", k, exc)
            row = DegreeRow(k=k, dim=dim, rank_dk=None, rank_dk1=None, skipped=str(exc))
        else:
            row = DegreeRow(
                k=k,
                dim=dim,
                rank_dk=rank_dk,
                rank_dk1=rank_dk1,
                certificates=certs_k + certs_k1,
            )
        engine.report_degree(row)
        rows.append(row)

    modular = engine.strategy.field == "modular"
    return HomologyReport(
        algebra=spec.algebra.name,
        n=spec.algebra.n,
        flavor=spec.flavor,
        degrees=tuple(rows),
        primes=engine.primes if modular else (),
        seed=engine.strategy.seed,
        weights=spec.weights,
        elapsed_ms=int((time.perf_counter() - started) * 1000),
    )


def boundary_squared(spec: ComplexSpec, k: int) -> SparseMatrix:
    """
    Exact product d_{k-1} . d_k; zero for every well-formed complex.
    """
    if k < 2:
        raise ConfigurationError("d∘d starts at degree 2")
    complex_ = build_complex(spec)
    return complex_.boundary(k - 1).matmul(complex_.boundary(k))
