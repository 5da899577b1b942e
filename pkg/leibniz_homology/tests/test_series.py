import random

import pytest

from leibniz_homology import ConfigurationError, PoincareSeries, predicted_series
from leibniz_homology.series import lie_homology


def _count_free_product(left, right, N):
    """
    Brute-force graded count of alternating words in two positive parts.
    """
    counts = [0] * (N + 1)
    counts[0] = 1
    parts = (left, right)

    def extend(total, last, depth):
        for side in (0, 1):
            if side == last:
                continue
            for degree in range(1, N + 1 - total):
                mult = parts[side][degree]
                if not mult:
                    continue
                counts[total + degree] += depth * mult
                extend(total + degree, side, depth * mult)

    extend(0, None, 1)
    return counts


def test_geometric():
    assert PoincareSeries.geometric(2, 6).to_list() == [1, 0, 1, 0, 1, 0, 1]


def test_tensor_product():
    a = PoincareSeries.of([1, 1], 4)
    assert (a * a).to_list() == [1, 2, 1, 0, 0]


def test_sum_uses_common_truncation():
    total = PoincareSeries.of([1, 2, 3], 5) + PoincareSeries.of([1], 2)
    assert total.to_list() == [2, 2, 3]


def test_inverse():
    geometric = PoincareSeries.geometric(1, 5)
    assert geometric.inverse().to_list() == [1, -1, 0, 0, 0, 0]


def test_inverse_needs_unit_constant():
    with pytest.raises(ConfigurationError):
        PoincareSeries.of([2, 1], 3).inverse()


def test_free_product_of_two_lines():
    line = PoincareSeries.geometric(1, 6)
    assert line.free_product(line).to_list() == [2**k for k in range(7)]


@pytest.mark.parametrize(
    "left, right",
    [
        ([1, 0, 1, 0, 1], [1, 1]),
        ([1, 2, 0, 1], [1, 0, 1, 1]),
        ([1, 0, 0, 1], [1, 1, 1]),
    ],
)
def test_free_product_counts_alternating_words(left, right):
    N = 7
    a, b = PoincareSeries.of(left, N), PoincareSeries.of(right, N)
    assert a.free_product(b).to_list() == _count_free_product(a, b, N)


def _random_connected(rng, N):
    return PoincareSeries.of([1] + [rng.randint(0, 3) for _ in range(N)], N)


def test_free_product_matches_word_count_on_random_pairs():
    rng = random.Random(2024)
    N = 8
    for _ in range(100):
        a, b = _random_connected(rng, N), _random_connected(rng, N)
        assert a.free_product(b).to_list() == _count_free_product(a, b, N)


def test_tensor_is_associative_with_unit():
    rng = random.Random(5)
    N = 8
    one = PoincareSeries.one(N)
    for _ in range(20):
        a, b, c = (_random_connected(rng, N) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * one == a
        assert one.tensor(a) == a


def test_free_product_needs_connected_factors():
    with pytest.raises(ConfigurationError):
        PoincareSeries.of([2], 3).free_product(PoincareSeries.one(3))


def test_from_betti_rejects_skipped_degrees():
    with pytest.raises(ConfigurationError):
        PoincareSeries.from_betti([1, None, 2])


def test_repr():
    assert repr(PoincareSeries.of([1, 0, 2], 2)) == "PoincareSeries(1 + 2*t^2 + O(t^3))"


# ==========================================================
# Predictions
# ==========================================================

def test_leibniz_schrodinger_prediction():
    series = predicted_series("leibniz_sch", 2, 6, gamma_degree="2n-2")
    assert series.to_list() == [1, 0, 2, 0, 3, 0, 3]


def test_leibniz_schrodinger_odd_gamma():
    series = predicted_series("leibniz_sch", 3, 6, gamma_degree="2n-1")
    assert series.to_list() == [1, 0, 0, 0, 1, 1, 1]


def test_galilei_prediction_is_free_product():
    sch = predicted_series("leibniz_sch", 2, 6)
    gal = predicted_series("leibniz_galilei", 2, 6)
    assert gal == sch.free_product(PoincareSeries.geometric(1, 6))


def test_lie_prediction_with_beta_powers():
    series = predicted_series("lie_sch", 3, 12, beta_powers=True)
    assert series.to_list() == [1, 0, 1, 2, 1, 2, 2, 2, 1, 2, 1, 0, 1]


def test_lie_prediction_without_beta():
    series = predicted_series("lie_sch", 3, 12)
    # (1 + t^3)^2 (1 + t^4 + t^6)
    assert series.to_list() == [1, 0, 0, 2, 1, 0, 2, 2, 0, 2, 1, 0, 1]


def test_lie_homology_of_pieces():
    assert lie_homology("sl2", 2) == (1, 0, 0, 1)
    assert lie_homology("so", 3) == (1, 0, 0, 1)


def test_prediction_validation():
    with pytest.raises(ConfigurationError):
        predicted_series("hochschild", 3, 6)
    with pytest.raises(ConfigurationError):
        predicted_series("leibniz_sch", 3, 6, gamma_degree="n")
    with pytest.raises(ConfigurationError):
        predicted_series("leibniz_sch", 1, 6)
