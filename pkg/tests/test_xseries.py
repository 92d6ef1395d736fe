import random

import pytest

from core.errors import InexactDivision, NonUnitConstant
from core.graded import AQCoeff
from core.qseries import QWindowSeries
from core.xseries import XSeries, discrepancy_record, product, qshift, x_add, x_exp, x_invert, x_mul, x_scale

ONE = AQCoeff.constant(1)


def series(*coeffs, order=None):
    return XSeries.build(coeffs, len(coeffs) if order is None else order)


def test_qshift_multiplies_by_q_power():
    f = series(ONE, AQCoeff.monomial(2))
    assert qshift(f, 2) == series(ONE, AQCoeff.monomial(2, QWindowSeries.monomial(2)))
    assert qshift(f, 0) == f
    assert qshift(qshift(f, 2), -2) == f


def test_x_scale():
    assert x_scale(series(ONE, ONE), -1) == series(ONE, AQCoeff.constant(-1))
    f = series(ONE, AQCoeff.monomial(2), ONE)
    assert x_scale(f, 1) == f


def test_x_squared():
    x = XSeries.monomial(1, ONE, 4)
    assert x_mul(x, x) == XSeries.monomial(2, ONE, 4)
    assert x_mul(XSeries.one(4), x) == x


def test_invert_geometric():
    assert x_invert(series(ONE, AQCoeff.constant(-1), order=5)) == series(ONE, ONE, ONE, ONE, ONE)
    assert x_invert(XSeries.one(3)) == XSeries.one(3)


def test_invert_then_multiply(aq):
    f = series(ONE, aq((2, 0, 1), (0, 1, 1)), aq((0, 3, 2)), order=4)
    assert (f * x_invert(f)).agrees_with(XSeries.one(4))


def test_invert_needs_unit_constant():
    with pytest.raises(NonUnitConstant):
        x_invert(series(AQCoeff.monomial(2), ONE))


def test_exp_of_zero():
    assert x_exp(XSeries.zero(4)) == XSeries.one(4)


def test_exp_flags_non_integral_coefficients():
    two_x = XSeries.monomial(1, AQCoeff.constant(2), 3)
    assert x_exp(two_x) == series(ONE, AQCoeff.constant(2), AQCoeff.constant(2))
    with pytest.raises(InexactDivision):
        x_exp(XSeries.monomial(1, AQCoeff.constant(2), 4))


def test_exp_needs_zero_constant():
    with pytest.raises(NonUnitConstant):
        x_exp(XSeries.one(3))


def test_first_discrepancy_locator(aq):
    f = series(ONE, aq((2, 0, 1), (0, 1, 1)))
    g = series(ONE, aq((2, 0, 1), (0, 1, 2)))
    d = f.first_discrepancy(g)
    assert d == (1, 0, 1, 1, 2)
    assert discrepancy_record(d, s=3) == {"s": 3, "x": 1, "a": 0, "q": 1, "expected": "1", "got": "2"}
    assert discrepancy_record(None) is None


def test_totals_and_window(aq):
    f = series(ONE, aq((2, 0, 1), (0, 1, 1)))
    assert f.totals() == [1, 2]
    assert f.q_window is None
    assert f.truncate_q(5).q_window == 5


def test_shift_x_and_times_q():
    f = series(ONE, ONE, order=3)
    assert f.shift_x(1) == series(AQCoeff(), ONE, ONE)
    assert f.times_q(1)[1] == AQCoeff.monomial(0, QWindowSeries.monomial(1))


def test_product_of_shifts(aq):
    y1 = series(ONE, aq((0, 1, 1), (2, 0, 1)), order=3)
    p = product([y1, y1.qshift(2)], 3)
    assert p[1] == aq((0, 1, 1), (2, 0, 1), (0, 3, 1), (2, 2, 1))


def random_coeff(rng, window=None):
    triples = [(rng.choice((0, 2, 4)), rng.randint(0, 4), rng.randint(-2, 2)) for _ in range(rng.randint(0, 3))]
    return AQCoeff.from_table(triples, window)


def random_xseries(rng, order=4, constant=True):
    window = rng.choice((None, 10, 14))
    coeffs = [random_coeff(rng, window) for _ in range(order)]
    if not constant:
        coeffs[0] = AQCoeff.constant(0)
    return series(*coeffs)


def test_ring_laws_on_random_xseries():
    rng = random.Random(3301)
    for _ in range(25):
        f, g, h = random_xseries(rng), random_xseries(rng), random_xseries(rng)
        assert x_add(f, g).agrees_with(x_add(g, f))
        assert x_mul(f, g).agrees_with(x_mul(g, f))
        assert x_add(x_add(f, g), h).agrees_with(x_add(f, x_add(g, h)))
        assert x_mul(x_mul(f, g), h).agrees_with(x_mul(f, x_mul(g, h)))
        assert x_mul(f, x_add(g, h)).agrees_with(x_add(x_mul(f, g), x_mul(f, h)))


def test_x_add_with_negation_is_zero():
    rng = random.Random(58)
    f = random_xseries(rng)
    assert x_add(f, -f).agrees_with(XSeries.zero(4))
    assert x_add(f, XSeries.zero(4)) == f


def test_qshift_composes_and_respects_products():
    rng = random.Random(912)
    for _ in range(20):
        f, g = random_xseries(rng), random_xseries(rng)
        k, l = rng.randint(-3, 3), rng.randint(-3, 3)
        assert qshift(qshift(f, k), l).agrees_with(qshift(f, k + l))
        assert qshift(x_mul(f, g), k).agrees_with(x_mul(qshift(f, k), qshift(g, k)))
        assert qshift(x_add(f, g), k).agrees_with(x_add(qshift(f, k), qshift(g, k)))


def test_exp_turns_sums_into_products():
    # multiples of 3! keep every coefficient of exp integral below x^4
    rng = random.Random(4406)
    for _ in range(10):
        f = random_xseries(rng, constant=False) * 6
        g = random_xseries(rng, constant=False) * 6
        assert x_exp(x_add(f, g)).agrees_with(x_mul(x_exp(f), x_exp(g)))
