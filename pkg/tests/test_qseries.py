import random

import pytest

from core.errors import InexactDivision, NotAUnit, WindowRequired
from core.qseries import QWindowSeries, geometric_inverse, q_add, q_exact_div, q_invert_unit, q_mul, q_neg

Q = QWindowSeries


def test_build_strips_zero_ends():
    s = Q.build(0, [0, 1, 2, 0])
    assert s.min_exp == 1
    assert s.coeffs == (1, 2)


def test_monomials_multiply_by_adding_exponents():
    assert q_mul(Q.monomial(2), Q.monomial(-1)) == Q.monomial(1)


def test_additive_inverse(qpoly):
    f = qpoly({0: 1, 3: -2, 5: 7})
    total = q_add(f, q_neg(f))
    assert total.is_zero
    assert total == Q.zero()


def test_difference_of_squares(qpoly):
    assert q_mul(qpoly({0: 1, 1: 1}), qpoly({0: 1, 1: -1})) == qpoly({0: 1, 2: -1})


def test_sum_takes_smaller_window(qpoly):
    s = qpoly({0: 1, 1: 1}, 3) + qpoly({0: 1, 5: 1})
    assert s.window_end == 3
    assert s.to_dict() == {0: 2, 1: 1}


def test_product_window_follows_valuation(qpoly):
    p = qpoly({0: 1, 1: 1}, 5) * Q.monomial(2)
    assert p.window_end == 7
    assert p.to_dict() == {2: 1, 3: 1}


def test_windowed_zero_keeps_its_window():
    z = Q.zero(5)
    assert z.valuation() == 5
    assert z * Q.monomial(2) == Q.zero(7)


def test_invert_geometric(qpoly):
    inv = q_invert_unit(qpoly({0: 1, 2: -1}), 7)
    assert inv.to_dict() == {0: 1, 2: 1, 4: 1, 6: 1}
    assert inv.window_end == 7


def test_invert_with_monomial_factor(qpoly):
    inv = q_invert_unit(qpoly({-1: 1, 1: -1}), 8)
    assert inv.to_dict() == {1: 1, 3: 1, 5: 1, 7: 1}


def test_invert_exact_monomial_needs_no_window():
    assert Q.monomial(3, -1).invert_unit() == Q.monomial(-3, -1)


def test_invert_rejects_non_units(qpoly):
    with pytest.raises(NotAUnit):
        q_invert_unit(qpoly({0: 2, 1: -1}), 5)
    with pytest.raises(NotAUnit):
        Q.zero().invert_unit(5)


def test_invert_polynomial_without_window(qpoly):
    with pytest.raises(WindowRequired):
        qpoly({0: 1, 1: 1}).invert_unit()


def test_inverse_times_unit_is_one_for_random_units():
    rng = random.Random(20240517)
    for _ in range(100):
        coeffs = [rng.choice((1, -1))] + [rng.randint(-3, 3) for _ in range(rng.randint(0, 5))]
        f = Q.build(0, coeffs).shift(rng.randint(-3, 3))
        inv = q_invert_unit(f, 20)
        assert (f * inv).agrees_with(Q.one())


def test_geometric_inverse():
    g = geometric_inverse(3, 10)
    assert g.to_dict() == {0: 1, 3: 1, 6: 1, 9: 1}
    assert g.window_end == 10


def test_exact_division(qpoly):
    assert q_exact_div(qpoly({0: 1, 4: -1}), qpoly({0: 1, 2: -1})) == qpoly({0: 1, 2: 1})
    assert q_exact_div(qpoly({0: 1, 3: -1}), qpoly({0: 1, 1: -1})) == qpoly({0: 1, 1: 1, 2: 1})
    assert q_exact_div(qpoly({1: 1, 2: 1}), Q.monomial(1)) == qpoly({0: 1, 1: 1})


def test_exact_division_with_remainder(qpoly):
    with pytest.raises(InexactDivision):
        q_exact_div(qpoly({0: 1, 1: 1}), qpoly({0: 1, 1: -1}))
    with pytest.raises(InexactDivision):
        q_exact_div(qpoly({0: 1, 2: 1}), qpoly({0: 1, 1: 1}))


def test_exact_div_int(qpoly):
    assert qpoly({0: 2, 1: 4}).exact_div_int(2) == qpoly({0: 1, 1: 2})
    with pytest.raises(InexactDivision):
        qpoly({0: 3}).exact_div_int(2)


def test_substitute_and_compress(qpoly):
    f = qpoly({1: 1, 2: 3}, 5)
    g = f.substitute_power(2)
    assert g == qpoly({2: 1, 4: 3}, 10)
    assert g.compress_exponents(2) == f
    assert qpoly({1: 1}).compress_exponents(2) is None


def test_first_difference_stops_at_window(qpoly):
    assert qpoly({0: 1, 2: 5}).first_difference(qpoly({0: 1, 2: 4, 3: 1})) == (2, 5, 4)
    assert qpoly({0: 1, 4: 1}, 4).first_difference(qpoly({0: 1, 4: 7})) is None


def test_value_at_one_needs_exact(qpoly):
    assert qpoly({0: 1, 3: 2}).value_at_one() == 3
    with pytest.raises(WindowRequired):
        qpoly({0: 1}, 4).value_at_one()


def test_str_shows_window(qpoly):
    assert str(qpoly({0: 1, 2: -3}, 5)) == "1 - 3q^2 + O(q^5)"


def random_qseries(rng):
    lo = rng.randint(-2, 2)
    coeffs = [rng.randint(-3, 3) for _ in range(rng.randint(1, 5))]
    window = rng.choice((None, lo + len(coeffs) + rng.randint(0, 4)))
    return Q.build(lo, coeffs, window)


def test_ring_laws_on_random_series():
    rng = random.Random(7211)
    for _ in range(60):
        f, g, h = random_qseries(rng), random_qseries(rng), random_qseries(rng)
        assert q_add(f, g).agrees_with(q_add(g, f))
        assert q_mul(f, g).agrees_with(q_mul(g, f))
        assert q_add(q_add(f, g), h).agrees_with(q_add(f, q_add(g, h)))
        assert q_mul(q_mul(f, g), h).agrees_with(q_mul(f, q_mul(g, h)))
        assert q_mul(f, q_add(g, h)).agrees_with(q_add(q_mul(f, g), q_mul(f, h)))
        assert q_add(f, q_neg(f)).agrees_with(Q.zero(f.window_end))
