import random
from fractions import Fraction

import pytest

from leibniz_homology import (
    AlgebraMismatch,
    ConfigurationError,
    build_algebra,
    check_tables,
)
from leibniz_homology.algebras import ALGEBRA_NAMES, Element, algebra_info
from leibniz_homology.algebras.realization import commutator


@pytest.mark.parametrize(
    "name, n, dim",
    [
        ("so", 3, 3),
        ("so", 4, 6),
        ("sl2", 2, 3),
        ("hbar", 3, 6),
        ("schrodinger", 2, 8),
        ("schrodinger", 3, 12),
        ("galilei", 2, 9),
        ("abelian_I", 2, 4),
    ],
)
def test_dimensions(name, n, dim):
    assert build_algebra(name, n).dim == dim


def test_sl2_brackets(sl2):
    a, b, c = (sl2.element(x) for x in "abc")

    assert sl2.bracket(b, c) == a
    assert sl2.bracket(a, b) == b * -2
    assert sl2.bracket(a, c) == c * 2
    assert sl2.bracket(c, b) == -a


def test_ideal_brackets(sch2):
    a, b, c = (sch2.element(x) for x in "abc")
    y1, y3 = sch2.element("y1"), sch2.element("y3")

    assert sch2.bracket(a, y1) == y1
    assert sch2.bracket(a, y3) == -y3
    assert sch2.bracket(b, y1) == -y3
    assert sch2.bracket(c, y3) == y1
    assert sch2.bracket(y1, y3).is_zero()


def test_rotation_moves_boosts(sch3):
    X12 = sch3.element("X12")
    assert sch3.bracket(X12, sch3.element("y1")) == sch3.element("y2")
    assert sch3.bracket(X12, sch3.element("y5")) == -sch3.element("y4")


@pytest.mark.parametrize("name", ["schrodinger", "galilei"])
@pytest.mark.parametrize("n", [2, 3])
def test_tables_pass(name, n):
    report = check_tables(build_algebra(name, n))
    assert report.passed
    assert report.checks


@pytest.mark.parametrize("name", ALGEBRA_NAMES)
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_jacobi(name, n):
    assert build_algebra(name, n).jacobi_violations() == []


@pytest.mark.parametrize("name", ["schrodinger", "galilei"])
@pytest.mark.parametrize("n", [2, 3])
def test_matrix_commutator_is_the_bracket(name, n):
    L = build_algebra(name, n)
    rng = random.Random(n)
    for _ in range(20):
        x = Element(L, {i: rng.randint(-3, 3) for i in rng.sample(range(L.dim), 3)})
        y = Element(L, {i: rng.randint(-3, 3) for i in rng.sample(range(L.dim), 3)})
        expected = commutator(L.realize(x), L.realize(y))
        assert (L.realize(L.bracket(x, y)) == expected).all()


def test_weights_are_computed_once(sch2):
    assert sch2.weights() is sch2.weights()


def test_dilation_moves_only_the_ideal():
    L = build_algebra("galilei", 2)
    d = L.element("d")

    assert L.bracket(d, L.element("y1")) == -L.element("y1")
    assert L.bracket(d, L.element("y3")) == -L.element("y3")
    for name in ("a", "b", "c", "X12"):
        assert L.bracket(d, L.element(name)).is_zero()


def test_weights_of_a(sch2):
    weights = {label.name: w[0] for label, w in zip(sch2.basis, sch2.weights())}

    assert weights["y1"] == Fraction(-1)
    assert weights["y3"] == Fraction(1)
    assert weights["b"] == Fraction(2)
    assert weights["c"] == Fraction(-2)
    assert weights["X12"] == 0


def test_galilei_has_two_weights():
    L = build_algebra("galilei", 2)
    assert all(len(row) == 2 for row in L.weights())


def test_components(sch3):
    assert len(sch3.subalgebra_indices("I")) == 6
    assert len(sch3.subalgebra_indices("hbar")) == 6
    assert not sch3.has_component("dilation")


def test_algebra_info(sl2):
    info = algebra_info(sl2)
    assert info["basis"] == ["a", "b", "c"]
    assert {"i": "b", "j": "c", "k": "a", "c": "1"} in info["structure"]


def test_unknown_algebra():
    with pytest.raises(ConfigurationError):
        build_algebra("poincare", 3)


def test_n_too_small():
    with pytest.raises(ConfigurationError):
        build_algebra("schrodinger", 1)


def test_unknown_label(sl2):
    with pytest.raises(AlgebraMismatch):
        sl2.element("y1")


def test_mixed_algebras(sl2, sch2):
    with pytest.raises(AlgebraMismatch):
        sl2.bracket(sl2.element("a"), sch2.element("a"))
