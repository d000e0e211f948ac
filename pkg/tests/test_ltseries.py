from collections import Counter

import pytest

from qomotivic.errors import NonPolynomialCoefficient, NotStabilized
from qomotivic.ltseries import (L_MINUS_ONE, BivRat, LVolRat, lp_div_one_minus, lp_mul,
                                lp_pow, lp_str, reconstruct_numerator, vol_from_positive_form)


def geometric(a, b):
    return BivRat({(0, 0): 1}, {(a, b): 1})


def test_lp_str_order_and_signs():
    assert lp_str({3: 1, 0: -1}) == "L^3 - 1"
    assert lp_str({1: -2, -1: 1}) == "-2*L + L^-1"
    assert lp_str({}) == "0"


def test_lp_div_one_minus():
    p = lp_mul({0: 1, 2: 1}, {0: 1, 3: -1})
    assert lp_div_one_minus(p, 3) == {0: 1, 2: 1}
    assert lp_div_one_minus({0: 1, -2: -1}, -2) == {0: 1}
    assert lp_div_one_minus({0: 1, 2: -1}, -2) == {2: -1}
    with pytest.raises(NonPolynomialCoefficient):
        lp_div_one_minus({0: 1}, 2)


def test_expand_geometric_series():
    coeffs = geometric(1, 1).expand(4)
    assert coeffs == [{e: 1} for e in range(5)]


def test_smooth_curve_coefficient():
    """(L-1) T / ((1 - L T)(1 - T)) has T^3 coefficient L^3 - 1."""
    x = BivRat({(1, 1): 1, (0, 1): -1}, {(1, 1): 1, (0, 1): 1})
    assert x.expand(3)[3] == {3: 1, 0: -1}


def test_expand_with_pure_L_factor():
    x = BivRat({(0, 0): 1, (2, 0): -1}, {(2, 0): 1, (0, 1): 1})
    assert x.expand(2) == [{0: 1}] * 3


def test_addition_and_cross_multiplied_equality():
    a = geometric(0, 1)
    b = BivRat({(0, 0): 1, (0, 1): 1}, {(0, 2): 1})
    assert a == b
    assert a + a == BivRat({(0, 0): 2}, {(0, 1): 1})
    assert (a - b).is_zero()


def test_cancel_exact_factor():
    x = BivRat({(0, 0): 1, (1, 1): -1}, {(1, 1): 1, (0, 2): 1})
    y, ok = x.cancel((1, 1))
    assert ok and y.den == Counter({(0, 2): 1}) and y == x
    z, ok = y.cancel((0, 2))
    assert not ok and z is y


def test_cancel_all_except_keeps_listed_factors():
    x = BivRat({(0, 0): 1, (0, 2): -1}, {(0, 2): 1, (0, 1): 1})
    kept = x.cancel_all_except({(0, 2)})
    assert kept.den == Counter({(0, 2): 1})
    assert kept == x


def test_text_and_json_are_canonical():
    x = BivRat({(1, 1): 1, (0, 1): -1}, {(1, 1): 1, (0, 1): 1})
    assert x.to_text() == "(L*T - T) / ((1 - T)*(1 - L*T))"
    assert x.to_json() == {"numerator": [[1, 1, 1], [0, 1, -1]],
                           "denominator": [[0, 1, 1], [1, 1, 1]]}


def test_scaled_and_product():
    x = geometric(2, 1).scaled(lp_pow(L_MINUS_ONE, 2))
    assert x.expand(1) == [{2: 1, 1: -2, 0: 1}, {4: 1, 3: -2, 2: 1}]
    assert (geometric(0, 1) * geometric(0, 1)).expand(2) == [{0: 1}, {0: 2}, {0: 3}]


def test_reconstruct_numerator():
    target = BivRat({(0, 1): 1, (3, 2): -2}, {(1, 1): 1, (0, 3): 1})
    coeffs = target.expand(20)
    num = reconstruct_numerator(coeffs, target.den)
    assert BivRat(num, target.den) == target
    with pytest.raises(NotStabilized):
        reconstruct_numerator(coeffs, Counter({(1, 1): 1}))


def test_volume_expansion_and_positive_form():
    v = LVolRat({0: 1}, {1: 1})
    assert v.expand(-3) == {0: 1, -1: 1, -2: 1, -3: 1}
    # 1 / (1 - L) = -L^-1 / (1 - L^-1)
    assert vol_from_positive_form({0: 1}, Counter({1: 1})) == LVolRat({-1: -1}, {1: 1})
    assert v * {1: 1, 0: -1} == LVolRat({1: 1})


def test_volume_arithmetic():
    a = LVolRat({-1: 1}, {1: 1})
    b = LVolRat({-2: 1}, {2: 1})
    total = a + b
    assert total.expand(-6) == {-1: 1, -2: 2, -3: 1, -4: 2, -5: 1, -6: 2}
    assert total - b == a
    with pytest.raises(ValueError):
        LVolRat({0: 1}, {0: 1})


def test_volume_reduction_cancels_divisible_factors():
    x = LVolRat({0: 1, -1: -2, -2: 1}, {1: 2, 3: 1})
    r = x.reduced()
    assert r == x
    assert r.den == Counter({3: 1}) and r.num == {0: 1}
    keep = LVolRat({0: 1}, {2: 1})
    assert keep.reduced().den == Counter({2: 1})
