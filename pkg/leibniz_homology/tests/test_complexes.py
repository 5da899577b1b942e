import time

import pytest

from leibniz_homology import (
    BudgetExceeded,
    ConfigurationError,
    HomologyEngine,
    PoincareSeries,
    RankStrategy,
    build_algebra,
)
from leibniz_homology.complexes import (
    ChevalleyEilenbergComplex,
    ComplexSpec,
    Convention,
    LodayComplex,
    betti,
    boundary_squared,
    ce_boundary,
    claims_report,
    loday_boundary,
)
from leibniz_homology.multilinear import Chain, antisymmetrize, named_chain


RATIONAL = RankStrategy(field="rational")


def _loday(L, top=4):
    return LodayComplex(ComplexSpec(algebra=L, flavor="loday", max_degree=top))


def _tensor(complex_, k, terms):
    L = complex_.algebra
    return Chain.from_monomials(
        complex_.space(k), {tuple(L.index(x) for x in m): c for m, c in terms.items()}
    )


# ==========================================================
# Boundaries on examples
# ==========================================================

def test_loday_bracket_of_two(sl2):
    complex_ = _loday(sl2)
    image = complex_.apply(2, _tensor(complex_, 2, {("b", "c"): 1}))
    assert image == _tensor(complex_, 1, {("a",): 1})


def test_loday_three_factors(sl2):
    complex_ = _loday(sl2)
    image = complex_.apply(3, _tensor(complex_, 3, {("a", "b", "c"): 1}))
    expected = _tensor(
        complex_, 2, {("b", "c"): -2, ("c", "b"): -2, ("a", "a"): -1}
    )
    assert image == expected


def test_loday_first_boundary_is_zero(sl2):
    assert loday_boundary(sl2, 1).is_zero()


def test_ce_bracket_of_two(sl2):
    spec = ComplexSpec(algebra=sl2, flavor="ce", max_degree=3)
    complex_ = ChevalleyEilenbergComplex(spec)
    b, c, a = sl2.index("b"), sl2.index("c"), sl2.index("a")

    image = complex_.apply(2, Chain.from_monomials(complex_.space(2), {(b, c): 1}))
    assert image == Chain.from_monomials(complex_.space(1), {(a,): 1})


def test_ce_boundary_shape(sch2):
    spec = ComplexSpec(algebra=sch2, flavor="ce", max_degree=3)
    assert ce_boundary(spec, 3).shape == (28, 56)


def test_ce_boundary_rejects_loday(sl2):
    spec = ComplexSpec(algebra=sl2, flavor="loday", max_degree=2)
    with pytest.raises(ConfigurationError):
        ce_boundary(spec, 2)


def test_loday_boundary_budget():
    L = build_algebra("schrodinger", 3)
    with pytest.raises(BudgetExceeded):
        loday_boundary(L, 7)


# ==========================================================
# d∘d = 0
# ==========================================================

@pytest.mark.parametrize(
    "flavor, wedge, k",
    [
        ("loday", None, 3),
        ("ce", None, 3),
        ("ce", None, 4),
        ("ce_coefficients", "I", 2),
        ("ce_coefficients", "I", 3),
    ],
)
def test_boundary_squares_to_zero(sch2, flavor, wedge, k):
    spec = ComplexSpec(algebra=sch2, flavor=flavor, max_degree=k, wedge=wedge)
    assert boundary_squared(spec, k).is_zero()


@pytest.mark.parametrize(
    "n, flavor, k",
    [
        (3, "ce", 2),
        (3, "ce", 3),
        (3, "ce", 4),
        (3, "ce", 5),
        (4, "ce", 3),
        (4, "ce", 4),
        (4, "ce", 5),
        (3, "loday", 3),
        (3, "loday", 4),
        (4, "loday", 3),
        pytest.param(4, "loday", 4, marks=pytest.mark.slow),
    ],
)
def test_boundary_squares_to_zero_for_larger_n(n, flavor, k):
    L = build_algebra("schrodinger", n)
    spec = ComplexSpec(algebra=L, flavor=flavor, max_degree=k)
    assert boundary_squared(spec, k).is_zero()


def test_boundary_squared_needs_degree_two(sl2):
    spec = ComplexSpec(algebra=sl2, flavor="ce", max_degree=3)
    with pytest.raises(ConfigurationError):
        boundary_squared(spec, 1)


# ==========================================================
# Betti numbers
# ==========================================================

@pytest.mark.parametrize(
    "name, n, expected",
    [
        ("sl2", 2, (1, 0, 0, 1)),
        ("so", 3, (1, 0, 0, 1)),
        ("so", 4, (1, 0, 0, 2, 0, 0, 1)),
        ("abelian_I", 2, (1, 4, 6, 4, 1)),
    ],
)
def test_lie_betti(name, n, expected):
    L = build_algebra(name, n)
    spec = ComplexSpec(algebra=L, flavor="ce", max_degree=L.dim)
    report = betti(spec, strategy=RATIONAL)

    assert report.betti_numbers == expected
    assert report.euler_identity(L.dim)


@pytest.mark.parametrize("name, n", [("sl2", 2), ("so", 3)])
def test_leibniz_of_semisimple(name, n, modular_engine):
    L = build_algebra(name, n)
    spec = ComplexSpec(algebra=L, flavor="loday", max_degree=4)
    report = betti(spec, engine=modular_engine)

    assert report.betti_numbers == (1, 0, 0, 0, 0)
    assert len(report.primes) == 2


def test_leibniz_of_abelian_is_tensor_algebra(modular_engine):
    L = build_algebra("abelian_I", 2)
    spec = ComplexSpec(algebra=L, flavor="loday", max_degree=3)
    assert betti(spec, engine=modular_engine).betti_numbers == (1, 4, 16, 64)


def test_schrodinger_3_lie_betti(sch3, modular_engine):
    spec = ComplexSpec(algebra=sch3, flavor="ce", max_degree=sch3.dim, weights="zero")
    report = betti(spec, engine=modular_engine)

    assert report.betti_numbers == (1, 0, 1, 2, 1, 2, 2, 2, 1, 2, 1, 0, 1)
    assert report.euler_identity(sch3.dim)


def test_betti_agrees_across_disjoint_primes(sch2):
    spec = ComplexSpec(algebra=sch2, flavor="loday", max_degree=3, weights="zero")
    first = betti(spec, strategy=RankStrategy(primes=2, seed=11))
    second = betti(spec, strategy=RankStrategy(primes=2, seed=12))

    assert set(first.primes).isdisjoint(second.primes)
    assert first.betti_numbers == second.betti_numbers


def test_schrodinger_2_leibniz_low_degrees(sch2, modular_engine):
    spec = ComplexSpec(algebra=sch2, flavor="loday", max_degree=3, weights="zero")
    assert betti(spec, engine=modular_engine).betti_numbers == (1, 1, 2, 3)


def test_galilei_2_leibniz_is_not_a_free_product(modular_engine):
    galilei = build_algebra("galilei", 2)
    spec = ComplexSpec(algebra=galilei, flavor="loday", max_degree=3, weights="zero")
    measured = betti(spec, engine=modular_engine).betti_numbers

    predicted = PoincareSeries.of([1, 1, 2, 3], 3).free_product(PoincareSeries.geometric(1, 3))
    assert measured == (1, 2, 4, 8)
    assert list(measured) != predicted.to_list()


@pytest.mark.slow
def test_schrodinger_2_leibniz_to_degree_six():
    L = build_algebra("schrodinger", 2)
    spec = ComplexSpec(algebra=L, flavor="loday", max_degree=6, weights="zero")

    started = time.perf_counter()
    report = betti(spec, strategy=RankStrategy(primes=2, seed=7))
    elapsed = time.perf_counter() - started

    assert elapsed < 600
    assert all(row.skipped is None for row in report.degrees)
    assert report.betti_numbers[:6] == (1, 1, 2, 3, 5, 7)


def test_zero_weight_block_gives_same_betti(sch2, modular_engine):
    full = betti(ComplexSpec(algebra=sch2, flavor="ce", max_degree=8), engine=modular_engine)
    zero = betti(
        ComplexSpec(algebra=sch2, flavor="ce", max_degree=8, weights="zero"),
        engine=modular_engine,
    )

    assert zero.betti_numbers == full.betti_numbers
    assert sum(r.dim for r in zero.degrees) < sum(r.dim for r in full.degrees)


def test_modular_agrees_with_rational(sch2, modular_engine):
    spec = ComplexSpec(algebra=sch2, flavor="ce_coefficients", max_degree=4, wedge="I")
    modular = betti(spec, engine=modular_engine)
    rational = betti(spec, strategy=RATIONAL)
    assert modular.betti_numbers == rational.betti_numbers


def test_degree_rows_are_reported(sl2):
    seen = []
    engine = HomologyEngine(field="rational", on_degree=seen.append)
    betti(ComplexSpec(algebra=sl2, flavor="ce", max_degree=3), engine=engine)
    assert [row.k for row in seen] == [0, 1, 2, 3]


def test_report_serialization(sl2):
    report = betti(ComplexSpec(algebra=sl2, flavor="ce", max_degree=3), strategy=RATIONAL)

    payload = report.to_dict(timings=False)
    assert "elapsed_ms" not in payload
    assert [row["betti"] for row in payload["degrees"]] == [1, 0, 0, 1]
    assert report.to_csv_rows()[0] == ["k", "dim", "rank_dk", "rank_dk1", "betti"]


def test_betti_rejects_degrees_outside_range(sl2):
    spec = ComplexSpec(algebra=sl2, flavor="ce", max_degree=2)
    with pytest.raises(ConfigurationError):
        betti(spec, degrees=[3], strategy=RATIONAL)


# ==========================================================
# Specs
# ==========================================================

def test_spec_validation(sl2, sch2, so3):
    with pytest.raises(ConfigurationError):
        ComplexSpec(algebra=sl2, flavor="hochschild", max_degree=2)
    with pytest.raises(ConfigurationError):
        ComplexSpec(algebra=sl2, flavor="loday", max_degree=2, wedge="sl2")
    with pytest.raises(ConfigurationError):
        ComplexSpec(algebra=sch2, flavor="ce", max_degree=2, coefficients="I")
    with pytest.raises(ConfigurationError):
        ComplexSpec(algebra=sl2, flavor="ce", max_degree=4)
    with pytest.raises(ConfigurationError):
        ComplexSpec(algebra=so3, flavor="ce", max_degree=2, weights="zero")


def test_zero_weights_need_a_diagonal_generator(sch2):
    with pytest.raises(ConfigurationError):
        ComplexSpec(
            algebra=sch2, flavor="ce_coefficients", max_degree=2, wedge="I", weights="zero"
        )


# ==========================================================
# Named cycles
# ==========================================================

@pytest.mark.parametrize("name", ["alpha_tilde", "zeta_tilde"])
def test_tilde_chains_are_leibniz_cycles(name):
    chain = named_chain(name, 2)
    L = chain.space.algebra
    complex_ = _loday(L, top=chain.space.k)
    assert complex_.apply(chain.space.k, chain).is_zero()


def test_antisymmetrization_commutes_in_degree_two(sch2):
    ce = ChevalleyEilenbergComplex(ComplexSpec(algebra=sch2, flavor="ce", max_degree=2))
    loday = _loday(sch2, top=2)
    b, c, y1 = sch2.index("b"), sch2.index("c"), sch2.index("y1")
    chain = Chain.from_monomials(ce.space(2), {(b, c): 1, (b, y1): 3})

    left = loday.apply(2, antisymmetrize(chain, target=loday.space(2)))
    right = antisymmetrize(ce.apply(2, chain), target=loday.space(1))
    assert left == right


# ==========================================================
# Claims
# ==========================================================

def test_rho_bar_is_a_cycle_under_the_printed_convention():
    report = claims_report(2)
    row = report.row(Convention.PRINTED, "d(rho_bar)")
    assert row.verdict == "zero"
