import pytest

from leibniz_homology import HomologyEngine, RankStrategy, build_algebra


@pytest.fixture
def sl2():
    return build_algebra("sl2", 2)


@pytest.fixture
def so3():
    return build_algebra("so", 3)


@pytest.fixture
def sch2():
    return build_algebra("schrodinger", 2)


@pytest.fixture
def sch3():
    return build_algebra("schrodinger", 3)


@pytest.fixture
def modular_engine():
    """
    Deterministic two-prime engine.
    """
    return HomologyEngine.from_strategy(RankStrategy(primes=2, seed=7))


@pytest.fixture
def rational_engine():
    return HomologyEngine.from_strategy(RankStrategy(field="rational"))
