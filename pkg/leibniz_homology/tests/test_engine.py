import pytest
from fractions import Fraction

from leibniz_homology import (
    BudgetExceeded,
    ConfigurationError,
    HomologyEngine,
    RankStrategy,
    build_algebra,
)
from leibniz_homology.backends import BlackBoxBackend, SparseModularBackend
from leibniz_homology.backends.blackbox import berlekamp_massey, rank_from_generator
from leibniz_homology.complexes import loday_boundary
from leibniz_homology.engine import PRIME_HIGH, PRIME_LOW
from leibniz_homology.matrix import SparseMatrix


def _matrix(rows):
    triplets = [
        (r, c, v) for r, row in enumerate(rows) for c, v in enumerate(row) if v
    ]
    r, c, v = zip(*triplets)
    return SparseMatrix.from_triplets(r, c, list(v), (len(rows), len(rows[0])))


# ==========================================================
# Configuration
# ==========================================================

def test_invalid_strategy_raises():
    with pytest.raises(ConfigurationError):
        HomologyEngine(strategy="magic")


def test_invalid_field_raises():
    with pytest.raises(ConfigurationError):
        HomologyEngine(field="real")


def test_invalid_primes_raises():
    with pytest.raises(ConfigurationError):
        HomologyEngine(primes=0)


def test_thresholds_must_be_ordered():
    with pytest.raises(ConfigurationError):
        RankStrategy(dense_below=1000, sparse_below=10)


def test_method_ladder():
    strategy = RankStrategy(dense_below=10, sparse_below=100)
    assert strategy.method_for(5) == "dense"
    assert strategy.method_for(50) == "sparse"
    assert strategy.method_for(500) == "blackbox"
    assert RankStrategy(strategy="sparse").method_for(5) == "sparse"


def test_wide_blocks_skip_elimination():
    strategy = RankStrategy(dense_below=10, sparse_below=100, sparse_side_below=20)
    assert strategy.method_for(50, side=10) == "sparse"
    assert strategy.method_for(50, side=30) == "blackbox"


# ==========================================================
# Primes
# ==========================================================

def test_primes_are_deterministic():
    assert HomologyEngine(seed=3).primes == HomologyEngine(seed=3).primes
    assert HomologyEngine(seed=3).primes != HomologyEngine(seed=4).primes


def test_primes_in_range(modular_engine):
    assert len(modular_engine.primes) == 2
    assert all(PRIME_LOW < p < PRIME_HIGH for p in modular_engine.primes)


# ==========================================================
# Ranks
# ==========================================================

def test_rank_of_singular_matrix(modular_engine, rational_engine):
    matrix = _matrix([[1, 2], [2, 4]])

    assert modular_engine.rank(matrix).rank == 1
    assert rational_engine.rank(matrix).rank == 1


def test_zero_matrix_has_rank_zero(modular_engine):
    certificate = modular_engine.rank(SparseMatrix.zeros((3, 4)))
    assert certificate.rank == 0
    assert certificate.method == "zero"


def test_rational_entries():
    matrix = _matrix([[Fraction(1, 2), 1], [1, 2]])
    engine = HomologyEngine(field="rational")
    assert engine.rank(matrix).rank == 1


@pytest.mark.parametrize("strategy", ["dense", "sparse", "blackbox"])
def test_methods_agree_on_a_boundary(strategy):
    # H_2 of sl2 vanishes in the Loday complex
    matrix = loday_boundary(build_algebra("sl2", 2), 3)
    engine = HomologyEngine(strategy=strategy, seed=1)

    certificate = engine.rank(matrix)
    assert certificate.rank == 6
    assert certificate.agreement
    assert len(certificate.primes_used) == 2


def test_certificate_serializes(modular_engine):
    payload = modular_engine.rank(_matrix([[1, 0], [0, 1]])).to_dict()
    assert payload["rank"] == 2
    assert payload["field"] == "modular"


# ==========================================================
# Kernels
# ==========================================================

def test_kernel_is_exact(rational_engine):
    matrix = _matrix([[1, 1, 0], [0, 0, 1]])
    kernel = rational_engine.kernel(matrix)

    assert len(kernel) == 1
    assert not any(matrix.apply(kernel[0]).values())


@pytest.mark.parametrize("name, k", [("sl2", 3), ("schrodinger", 2), ("galilei", 2)])
def test_rank_plus_nullity_is_columns(rational_engine, modular_engine, name, k):
    matrix = loday_boundary(build_algebra(name, 2), k)
    kernel = rational_engine.kernel(matrix)

    assert rational_engine.rank(matrix).rank + len(kernel) == matrix.shape[1]
    assert modular_engine.rank(matrix).rank + len(kernel) == matrix.shape[1]
    assert all(not any(matrix.apply(v).values()) for v in kernel)


def test_in_span(rational_engine):
    basis = [{0: 1, 1: 1}]
    assert rational_engine.in_span(basis, {0: 3, 1: 3}, 2)
    assert not rational_engine.in_span(basis, {0: 1}, 2)
    assert rational_engine.in_span([], {}, 2)


def test_error_hook_sees_failures():
    seen = []
    engine = HomologyEngine(field="rational", memory_cap=1, on_error=seen.append)
    with pytest.raises(BudgetExceeded):
        engine.rank(_matrix([[1, 2], [3, 4]]))
    assert seen


def test_large_side_goes_to_blackbox():
    matrix = loday_boundary(build_algebra("schrodinger", 2), 3)
    reference = HomologyEngine(field="rational").rank(matrix).rank

    engine = HomologyEngine(seed=5, dense_below=2, sparse_below=10**6, sparse_side_below=2)
    certificate = engine.rank(matrix)

    assert certificate.rank == reference
    assert certificate.method in ("blackbox", "peeled")


def test_workers_do_not_change_ranks():
    matrix = loday_boundary(build_algebra("sl2", 2), 3)
    serial = HomologyEngine(strategy="sparse", seed=2).rank(matrix)
    threaded = HomologyEngine(strategy="sparse", seed=2, workers=2).rank(matrix)
    assert serial == threaded


# ==========================================================
# Singleton stripping
# ==========================================================

def test_peel_singletons_keeps_the_rank():
    matrix = _matrix(
        [
            [1, 0, 0, 0],
            [2, 1, 1, 0],
            [0, 1, 1, 0],
            [0, 0, 0, 3],
        ]
    )
    pivots, rest = matrix.peel_singletons()

    assert pivots == 2
    assert rest.shape == (2, 2)
    assert pivots + HomologyEngine(field="rational").rank(rest).rank == 3


def test_peel_consumes_triangular_matrices():
    matrix = _matrix([[1, 5, 7], [0, 2, 4], [0, 0, 3]])
    pivots, rest = matrix.peel_singletons()

    assert pivots == 3
    assert rest.is_zero()


def test_peeled_rank_matches_rational(modular_engine, rational_engine):
    matrix = loday_boundary(build_algebra("schrodinger", 2), 3)
    certificate = modular_engine.rank(matrix)

    assert certificate.rank == rational_engine.rank(matrix).rank
    assert certificate.peeled > 0


# ==========================================================
# Berlekamp-Massey
# ==========================================================

def test_berlekamp_massey_finds_fibonacci():
    p = 1_000_003
    fib = [0, 1]
    while len(fib) < 30:
        fib.append(fib[-1] + fib[-2])

    assert berlekamp_massey(iter(fib), p, limit=30) == [1, p - 1, p - 1]


def test_generator_drops_the_x_power():
    assert rank_from_generator([1, 4, 0, 0]) == 1
    assert rank_from_generator([1]) == 0


@pytest.mark.parametrize("backend_cls", [SparseModularBackend, BlackBoxBackend])
def test_backend_runs_carry_their_own_stats(backend_cls):
    matrix = loday_boundary(build_algebra("sl2", 2), 3)
    primes = HomologyEngine.from_strategy(RankStrategy(primes=2, seed=3)).primes
    backend = backend_cls(memory_cap=2**30)

    first, second = (backend.run(matrix, p) for p in primes)

    assert first.stats["prime"] == primes[0]
    assert second.stats["prime"] == primes[1]
    assert first.rank == second.rank == backend.rank(matrix, primes[0])
    assert not hasattr(backend, "last_stats")
