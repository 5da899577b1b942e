import random
from fractions import Fraction

import numpy as np
import pytest

from leibniz_homology import (
    AlgebraMismatch,
    ClosureError,
    ConfigurationError,
    FactorialCapExceeded,
)
from leibniz_homology.multilinear import (
    Chain,
    CoeffWedgeSpace,
    TensorSpace,
    WedgeSpace,
    act,
    antisymmetrize,
    beta_power,
    named_chain,
    normalize_wedge,
    permutation_sign,
    wedge,
)
from leibniz_homology.multilinear.named import ideal_wedge, rotation_wedge


# ==========================================================
# Codecs
# ==========================================================

def test_wedge_colex_order(sl2):
    space = WedgeSpace(sl2, 2)
    assert [space.unrank(i) for i in range(space.dim)] == [(0, 1), (0, 2), (1, 2)]
    assert space.rank((1, 2)) == 2


def test_wedge_rejects_unsorted(sl2):
    with pytest.raises(AlgebraMismatch):
        WedgeSpace(sl2, 2).rank((2, 1))


def test_tensor_first_slot_most_significant(sl2):
    space = TensorSpace(sl2, 3)
    assert space.dim == 27
    assert space.rank((1, 2, 0)) == 1 * 9 + 2 * 3
    assert space.unrank(26) == (2, 2, 2)


def test_coeff_wedge_layout(sch2):
    ideal = sch2.subalgebra_indices("I")
    sl2 = sch2.subalgebra_indices("sl2")
    space = CoeffWedgeSpace(sch2, 2, sl2, ideal)

    assert space.dim == 3 * 6
    first, second = ideal[0], ideal[1]
    assert space.rank((sl2[1], first, second)) == 6
    assert space.unrank(6) == (sl2[1], first, second)


@pytest.mark.parametrize("kind", ["wedge", "tensor", "coeff"])
def test_array_codec_matches_scalar(sch2, kind):
    ideal = sch2.subalgebra_indices("I")
    if kind == "wedge":
        space = WedgeSpace(sch2, 3, ideal)
    elif kind == "tensor":
        space = TensorSpace(sch2, 2)
    else:
        space = CoeffWedgeSpace(sch2, 2, sch2.subalgebra_indices("so"), ideal)

    indices = np.arange(space.dim, dtype=np.int64)
    digits = space.unrank_array(indices)

    assert [tuple(row) for row in digits.tolist()] == list(space.monomials())
    assert np.array_equal(space.rank_array(digits), indices)


def test_normalize_wedge():
    assert normalize_wedge((2, 0, 1)) == (1, (0, 1, 2))
    assert normalize_wedge((1, 0)) == (-1, (0, 1))
    assert normalize_wedge((1, 1)) == (0, None)


def test_permutation_sign():
    assert permutation_sign((0, 1, 2)) == 1
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((2, 0, 1)) == 1


# ==========================================================
# Chains
# ==========================================================

def test_from_monomials_sorts_with_sign(sch2):
    space = ideal_wedge(sch2, 2)
    y1, y3 = sch2.index("y1"), sch2.index("y3")

    forward = Chain.from_monomials(space, {(y1, y3): 1})
    backward = Chain.from_monomials(space, {(y3, y1): 1})

    assert backward == -forward
    assert Chain.from_monomials(space, {(y1, y1): 5}).is_zero()


def test_chain_arithmetic(sch2):
    beta = named_chain("beta", 2)

    assert (beta - beta).is_zero()
    assert beta * 3 == 3 * beta
    assert (beta + beta).proportional_to(beta) == 2


def test_chains_in_different_spaces(sch2):
    beta = named_chain("beta", 2)
    with pytest.raises(AlgebraMismatch):
        beta + Chain.zero(ideal_wedge(sch2, 3))


# ==========================================================
# Named chains
# ==========================================================

def test_beta_terms():
    beta = named_chain("beta", 3)
    assert len(beta) == 3
    assert all(coef == 1 for _, coef in beta.terms())


def test_alpha_is_top_monomial():
    alpha = named_chain("alpha", 3)
    assert alpha.space.k == 6
    assert len(alpha) == 1


def test_zeta_equals_beta_when_n_is_two():
    zeta, beta = named_chain("zeta", 2), named_chain("beta", 2)
    assert zeta.proportional_to(beta) == 1


def test_beta_square_is_alpha():
    assert beta_power(2, 2).proportional_to(named_chain("alpha", 2)) == -2


def test_beta_power_zero_is_unit():
    unit = beta_power(3, 0)
    assert unit.space.k == 0
    assert dict(unit.entries) == {0: 1}


def test_rho_lives_over_rotations():
    rho = named_chain("rho", 3)
    assert rho.space == rotation_wedge(rho.space.algebra, 2)
    assert len(rho) == 6


def test_chain_to_dict_uses_labels():
    terms = named_chain("beta", 2).to_dict()["terms"]
    assert {t["monomial"] for t in terms} == {"y1∧y3", "y2∧y4"}


def test_unknown_chain():
    with pytest.raises(ConfigurationError):
        named_chain("omega", 3)


# ==========================================================
# Action
# ==========================================================

@pytest.mark.parametrize("n", [2, 3])
def test_beta_is_hbar_invariant(n):
    beta = named_chain("beta", n)
    L = beta.space.algebra
    for g in L.subalgebra_indices("hbar"):
        assert act(beta.space, L.element(g), beta).is_zero()


def test_weight_action_is_diagonal(sch2):
    space = ideal_wedge(sch2, 2)
    y1, y2 = sch2.index("y1"), sch2.index("y2")
    chain = Chain.from_monomials(space, {(y1, y2): 1})

    # two boosts, each of weight -1
    assert act(space, sch2.element("a"), chain) == chain * -2


def test_rho_is_moved_by_b():
    rho = named_chain("rho", 3)
    L = rho.space.algebra
    assert not act(rho.space, L.element("b"), rho).is_zero()


def test_action_leaving_the_factor(sch2):
    space = WedgeSpace(sch2, 2, sch2.subalgebra_indices("sl2"))
    chain = Chain.from_monomials(space, {(sch2.index("a"), sch2.index("b")): 1})
    with pytest.raises(ClosureError):
        act(space, sch2.element("y1"), chain)


def test_act_on_foreign_chain(sch2):
    beta = named_chain("beta", 2)
    with pytest.raises(AlgebraMismatch):
        act(ideal_wedge(sch2, 3), sch2.element("a"), beta)


PAIRS = [("a", "y1"), ("b", "c"), ("X12", "y3"), ("b", "y1"), ("c", "y4")]


def _random_chain(space, seed, terms=6):
    rng = random.Random(seed)
    return Chain(space, {rng.randrange(space.dim): rng.randint(1, 5) for _ in range(terms)})


@pytest.mark.parametrize("kind", ["wedge", "tensor"])
def test_act_is_a_right_lie_action(sch2, kind):
    space = WedgeSpace(sch2, 3) if kind == "wedge" else TensorSpace(sch2, 2)
    w = _random_chain(space, seed=4)

    for x, y in PAIRS:
        X, Y = sch2.element(x), sch2.element(y)
        twice = act(space, Y, act(space, X, w)) - act(space, X, act(space, Y, w))
        assert twice == act(space, sch2.bracket(X, Y), w)


@pytest.mark.parametrize("name", ["alpha_tilde", "zeta_tilde"])
@pytest.mark.parametrize("n", [2, 3])
def test_tilde_chains_are_invariant(name, n):
    chain = named_chain(name, n)
    L = chain.space.algebra
    for g in range(L.dim):
        assert act(chain.space, L.element(g), chain).is_zero()


# ==========================================================
# Products
# ==========================================================

def test_wedge_product_degrees():
    beta = named_chain("beta", 3)
    assert wedge(beta, beta).space.k == 4


def test_antisymmetrize_beta(sch2):
    beta = named_chain("beta", 2)
    tilde = antisymmetrize(beta, target=TensorSpace(sch2, 2))
    y1, y3 = sch2.index("y1"), sch2.index("y3")

    assert len(tilde) == 4
    assert tilde.entries[tilde.space.rank((y1, y3))] == Fraction(1, 2)
    assert tilde.entries[tilde.space.rank((y3, y1))] == Fraction(-1, 2)


def test_antisymmetrize_cap():
    with pytest.raises(FactorialCapExceeded):
        antisymmetrize(named_chain("alpha", 2), cap=3)


def test_antisymmetrize_is_alternating(sch2):
    w = _random_chain(WedgeSpace(sch2, 3), seed=1)
    target = TensorSpace(sch2, 3)
    tilde = antisymmetrize(w, target=target)

    assert len(tilde) == 6 * len(w)
    for (g, h, k), coef in tilde.terms():
        assert len({g, h, k}) == 3
        assert tilde.entries[target.rank((h, g, k))] == -coef
        assert tilde.entries[target.rank((g, k, h))] == -coef


def test_act_commutes_with_antisymmetrize(sch2):
    space = WedgeSpace(sch2, 3)
    target = TensorSpace(sch2, 3)
    w = _random_chain(space, seed=2)

    for g in range(sch2.dim):
        X = sch2.element(g)
        left = antisymmetrize(act(space, X, w), target=target)
        right = act(target, X, antisymmetrize(w, target=target))
        assert left == right


def test_tilde_chain_dimensions():
    gamma_tilde = named_chain("gamma_tilde", 2)
    assert gamma_tilde.space.k == 3
    assert gamma_tilde.space.dim == 8**3
