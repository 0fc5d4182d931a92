from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qpfaffian.errors import NonTruncatable, NotAUnit, OrderMismatch
from qpfaffian.scalar import (
    QSeries,
    parse_rat,
    rat,
    rat_str,
    sample_rational,
    trial_rng,
)


def test_rat_normalization():
    assert rat(2, 4) == Fraction(1, 2)
    assert rat(-3, -6) == Fraction(1, 2)
    assert rat(0, 5) == 0
    assert rat(0, 5).denominator == 1
    with pytest.raises(ZeroDivisionError):
        rat(1, 0)


def test_rat_str_roundtrip():
    assert rat_str(Fraction(3, 4)) == "3/4"
    assert rat_str(Fraction(5)) == "5"
    assert rat_str(Fraction(-1, 2)) == "-1/2"
    assert parse_rat("-7/3") == Fraction(-7, 3)


def series(coeffs, order=None):
    return QSeries.from_coeffs([Fraction(c) for c in coeffs], order)


def test_series_mul_difference_of_squares():
    f = series([1, 1, 0])  # 1 + q at order 2
    g = series([1, -1, 0])
    assert (f * g).coeffs == (1, 0, -1)


def test_series_mul_identity():
    f = series([2, 3, 5])
    assert f * 1 == f
    assert 1 * f == f


def test_series_square_truncates():
    f = series([1, 1, 1])  # 1 + q + q^2 at order 2
    assert (f * f).coeffs == (1, 2, 3)


def test_series_order_mismatch():
    with pytest.raises(OrderMismatch):
        series([1, 0]) * series([1, 0, 0])
    with pytest.raises(OrderMismatch):
        series([1, 0]) == series([1, 0, 0])


def test_series_invert_geometric():
    f = series([1, -1, 0, 0])  # 1 - q at order 3
    assert f.invert().coeffs == (1, 1, 1, 1)
    assert QSeries.const(1, 4).invert() == 1
    assert QSeries.const(2, 1).invert() == QSeries.const(Fraction(1, 2), 1)


def test_series_invert_nonunit():
    with pytest.raises(NotAUnit):
        series([0, 1, 0]).invert()


def test_series_shift():
    f = series([1, 2, 3])
    assert f.shift(1).coeffs == (0, 1, 2)
    assert f.shift(1).shift(-1).coeffs == (1, 2, 0)
    with pytest.raises(NonTruncatable):
        f.shift(-1)


small_fracs = st.fractions(
    min_value=-5, max_value=5, max_denominator=5
)


@given(
    st.lists(small_fracs, min_size=4, max_size=4),
    st.lists(small_fracs, min_size=4, max_size=4),
    st.lists(small_fracs, min_size=4, max_size=4),
)
def test_series_ring_axioms(a, b, c):
    f, g, h = series(a), series(b), series(c)
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f


@given(st.lists(small_fracs, min_size=4, max_size=4))
def test_series_unit_inverse(cs):
    if cs[0] == 0:
        cs[0] = Fraction(1)
    f = series(cs)
    assert (f * f.invert()).coeffs == (1, 0, 0, 0)


@given(
    st.lists(st.integers(-9, 9), min_size=3, max_size=3),
    st.lists(st.integers(-9, 9), min_size=3, max_size=3),
)
def test_truncated_product_matches_polynomial_product(a, b):
    # degree <= K inputs: truncation of the exact product agrees
    K = 2
    f, g = series(a), series(b)
    exact = [0] * 5
    for u, cu in enumerate(a):
        for v, cv in enumerate(b):
            exact[u + v] += cu * cv
    assert (f * g).coeffs == tuple(Fraction(x) for x in exact[: K + 1])


def test_sample_rational_deterministic():
    x = sample_rational(trial_rng(42, 0), bound=5)
    y = sample_rational(trial_rng(42, 0), bound=5)
    assert x == y
    assert 1 <= abs(x.numerator) <= 5 and 1 <= x.denominator <= 5
    z = sample_rational(trial_rng(42, 1), bound=5)
    assert isinstance(z, Fraction)


def test_sample_rational_exclusion():
    rng = trial_rng(7, 0)
    for _ in range(50):
        v = sample_rational(rng, bound=2, exclude=lambda x: x == 1)
        assert v != 1
