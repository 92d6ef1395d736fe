import pytest

from core.errors import SizeCapExceeded
from core.graded import AQCoeff, NuTSeries
from core.qseries import QWindowSeries, geometric_inverse
from core.symmetric import Partition, partitions_of
from core.torus_knot import (
    check_pbar_qdiff,
    check_wave_qdiff,
    eval_pstar,
    homfly,
    hook_content_at_pstar,
    off_grid_monomial,
    pbar_closed_form,
    psi_substituted,
    schur_at_pstar,
    superpoly_series,
    wave,
    ytilde,
)

P = Partition


def q_plus_a2_over_1_minus_q2(window):
    inv = geometric_inverse(2, window)
    return AQCoeff({0: inv.shift(1), 2: inv}, window)


def test_pstar_one():
    p1 = eval_pstar(1, 2, 6)
    assert list(p1.coefficients()) == [(-1, 1, -1), (-1, 3, -1), (-1, 5, -1), (1, 1, 1), (1, 3, 1), (1, 5, 1)]


def test_pstar_is_odd_in_u():
    p = eval_pstar(2, 4, 12)
    assert p.map_outer(lambda e: -e) == -p


def test_homfly_empty_partition():
    assert homfly(P(()), 1, 2, 10) == NuTSeries.constant(1, 10, grid=2)


def test_homfly_single_box_unknot_family():
    h = homfly(P((1,)), 1, 3, 10)
    assert h.window_end == 10
    assert h.agrees_with(eval_pstar(1, 2, 10))


def test_homfly_one_f_is_single_schur_term():
    f = 2
    h = homfly(P((2,)), 1, f, 12)
    want = schur_at_pstar(P((2,)), 2, 12).shift_q(2 * f).truncate(12)
    assert h.agrees_with(want)


@pytest.mark.parametrize("m,n", [(2, 3), (3, 4)])
def test_homfly_stays_on_half_integer_grid(m, n):
    h = homfly(P((1,)), m, n, 16)
    assert h.grid == 2 * m
    assert h.on_grid(m)


def test_homfly_size_cap():
    with pytest.raises(SizeCapExceeded):
        homfly(P((3,)), 3, 2, 10)


@pytest.mark.parametrize("size", [1, 2, 3])
def test_schur_matches_hook_content(size):
    for mu in partitions_of(size):
        assert schur_at_pstar(mu, 2, 10).agrees_with(hook_content_at_pstar(mu, 10)), mu


def test_wave_one_row_slots():
    f = 3
    slots = wave(1, f, 3, 12)
    assert slots[0] == NuTSeries.constant(1, 12, grid=2)
    for k in range(1, 4):
        want = schur_at_pstar(P((k,)), 2, 12).shift_q(f * (k * k - k)).truncate(12)
        assert slots[k].agrees_with(want), k


@pytest.mark.parametrize("f", [1, 3])
def test_wave_qdiff_residual_vanishes(f):
    assert check_wave_qdiff(f, 4, 20) == []


def test_psi_first_order():
    psi = psi_substituted(1, 3, 20)
    assert psi[0].agrees_with(AQCoeff.constant(1))
    assert psi[1].agrees_with(q_plus_a2_over_1_minus_q2(20))


def test_psi_first_order_general_f():
    psi = psi_substituted(2, 2, 20)
    assert psi[1].agrees_with(q_plus_a2_over_1_minus_q2(20).shift_q(1).truncate(20))


def test_superpoly_first_terms():
    f = 2
    P_ = superpoly_series(f, 3, 20)
    assert P_[0] == AQCoeff.constant(1, 20)
    assert P_[1].agrees_with((q_plus_a2_over_1_minus_q2(20) * -1).shift_q(f).truncate(20))


@pytest.mark.parametrize("f", [1, 2])
def test_superpoly_qdiff_and_closed_form(f):
    assert check_pbar_qdiff(f, 5, 30) is None
    P_ = superpoly_series(f, 4, 30)
    for r in range(5):
        assert P_[r].agrees_with(pbar_closed_form(f, r, 30)), r


def test_ytilde_first_order(aq):
    yt = ytilde(1, 1, 3, 20)
    assert yt[0].agrees_with(AQCoeff.constant(1))
    assert yt[1].agrees_with(aq((2, 0, 1), (0, 1, 1)))


def test_ytilde_index_range():
    with pytest.raises(ValueError):
        ytilde(1, 3, 2, 10)


@pytest.mark.parametrize("m, n", [(1, 2), (2, 3)])
@pytest.mark.parametrize("lam", [P((1,)), P((2,)), P((1, 1))])
def test_homfly_symmetric_in_m_and_n(m, n, lam):
    # both sides land on the t^(1/2) grid once coarsened
    window = 8
    h_mn = homfly(lam, m, n, m * window).coarsen(m)
    h_nm = homfly(lam, n, m, n * window).coarsen(n)
    assert h_mn.grid == h_nm.grid == 2
    assert h_mn.agrees_with(h_nm)


def test_off_grid_monomial():
    on = NuTSeries({1: QWindowSeries.from_dict({2: 1, 4: -1})}, 8, grid=4)
    assert off_grid_monomial(on, 2) is None
    off = NuTSeries({-1: QWindowSeries.from_dict({3: 2}), 1: QWindowSeries.from_dict({1: 5})}, 8, grid=4)
    assert off_grid_monomial(off, 2) == {"a": -1, "q": -3, "expected": "0", "got": "2"}


def test_pstar_caches_are_bounded():
    assert eval_pstar.cache_info().maxsize is not None
    assert schur_at_pstar.cache_info().maxsize is not None
