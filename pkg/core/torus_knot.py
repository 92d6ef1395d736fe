"""Coloured HOMFLY-PT invariants of torus knots, wave functions and superpolynomial series.

Knot-side values are NuTSeries in u = nu**(1/2) over series in
sigma-bar = t**(-1/(2m)), expanded at t = infinity so that t -> q**-2 (m = 1)
turns sigma-bar into q with ascending exponents. Windows are in sigma-bar units.
"""

from __future__ import annotations

import logging
import time
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Tuple

from core.errors import GridViolation, IdentityViolation, ParityViolation, RouteMismatch
from core.graded import AQCoeff, NuTSeries
from core.path_oracle import check_slope
from core.qseries import QWindowSeries, geometric_inverse
from core.settings import DEFAULT_SIZE_CAP
from core.symmetric import Partition, adams_coeffs, character, kappa, partitions_of, schur_in_powersums, z_rho
from core.xseries import XSeries, discrepancy_record, x_exp_from_log_derivative

log = logging.getLogger(__name__)


def _half(grid: int) -> int:
    if grid < 2 or grid % 2:
        raise ValueError(f"grid must be 2m with m >= 1, got {grid}")
    return grid // 2


@lru_cache(maxsize=256)
def eval_pstar(k: int, grid: int, window: int) -> NuTSeries:
    """p_k(t*) = (u^k - u^-k) / (t^{k/2} - t^{-k/2}) = (u^k - u^-k) sb^{km} / (1 - sb^{2km})."""
    if k < 1:
        raise ValueError("power-sum index must be positive")
    m = _half(grid)
    s = geometric_inverse(2 * k * m, window).shift(k * m).truncate(window)
    return NuTSeries({k: s, -k: -s}, window, grid=grid)


def _powersum_product(rho: Partition, grid: int, window: int) -> NuTSeries:
    out = NuTSeries.constant(1, grid=grid)
    for part in rho:
        out = (out * eval_pstar(part, grid, window)).truncate(window)
    return out


@lru_cache(maxsize=512)
def schur_at_pstar(mu: Partition, grid: int, window: int, size_cap: int = DEFAULT_SIZE_CAP) -> NuTSeries:
    """s_mu(t*), assembled over the common denominator |mu|!."""
    if mu.size == 0:
        return NuTSeries.constant(1, window, grid=grid)
    m = _half(grid)
    # each factor carries valuation km, so pad the working window by m|mu|
    work = window + m * mu.size
    denom = factorial(mu.size)
    acc = NuTSeries({}, work, grid=grid)
    for rho, coef in schur_in_powersums(mu, size_cap).items():
        scale = coef * denom
        assert scale.denominator == 1, (mu, rho, coef)
        acc = acc + _powersum_product(rho, grid, work) * int(scale)
    return acc.exact_div_int(denom).truncate(window)


def hook_content_at_pstar(mu: Partition, window: int) -> NuTSeries:
    """s_mu(t*) on the m = 1 grid from the hook-content product."""
    out = NuTSeries.constant(1, grid=2)
    conj = mu.conjugate()
    # single factors may carry negative valuations
    work = window + 2 * mu.size * (mu.size + 1)
    for i, row in enumerate(mu.parts):
        for j in range(row):
            c = j - i
            h = row - j + conj.parts[j] - i - 1
            num = NuTSeries({1: QWindowSeries.monomial(h - c), -1: QWindowSeries.monomial(h + c, -1)}, grid=2)
            out = (out * num.scale_inner(geometric_inverse(2 * h, work))).truncate(work)
    return out.truncate(window)


def off_grid_monomial(h: NuTSeries, step: int) -> Optional[dict]:
    """First (u, sigma) monomial whose sigma exponent is not a multiple of step."""
    bad = sorted((u, e, c) for u, e, c in h.coefficients() if e % step)
    if not bad:
        return None
    u, e, c = bad[0]
    return {"a": u, "q": -e, "expected": "0", "got": str(c)}


def homfly(
    lam: Partition,
    m: int,
    n: int,
    window: int,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> NuTSeries:
    """H_lam of T(m, n): u^{n(m-1)|lam|} sum_mu C^lam_{mu,m} sb^{kappa_mu n} s_mu(t*)."""
    check_slope(m, n)
    grid = 2 * m
    t0 = time.perf_counter()
    if lam.size == 0:
        return NuTSeries.constant(1, window, grid=grid)
    coeffs = adams_coeffs(lam, m, size_cap)
    shifts = {mu: kappa(mu) * n for mu in coeffs}
    margin = max(0, -min(shifts.values()))
    acc = NuTSeries({}, window, grid=grid)
    for mu, c in sorted(coeffs.items()):
        term = schur_at_pstar(mu, grid, window + margin, size_cap).shift_q(shifts[mu])
        acc = acc + term * c
    out = acc.truncate(window).shift_outer(n * (m - 1) * lam.size)
    bad = off_grid_monomial(out, m)
    if bad is not None:
        raise GridViolation(
            f"H_{lam} of T({m},{n}) has u^{bad['a']} sigma^{bad['q']} off the t^(1/2) grid", locator=bad
        )
    log.debug("homfly lam=%s m=%d n=%d window=%d in %.0f ms", lam, m, n, window, (time.perf_counter() - t0) * 1000)
    return out


def wave(m: int, n: int, kmax: int, window: int, size_cap: int = DEFAULT_SIZE_CAP) -> List[NuTSeries]:
    """[H_(k) for k = 0..kmax]."""
    return [homfly(Partition((k,)) if k else Partition(()), m, n, window, size_cap) for k in range(kmax + 1)]


def one_row_schur(kmax: int, window: int, size_cap: int = DEFAULT_SIZE_CAP) -> List[NuTSeries]:
    """A(x) coefficients s_(k)(t*) on the m = 1 grid."""
    return [schur_at_pstar(Partition((k,)) if k else Partition(()), 2, window, size_cap) for k in range(kmax + 1)]


def _t_power(x: NuTSeries, half_powers: int) -> NuTSeries:
    # t^{h/2} = sb^{-h} on the m = 1 grid
    return x.shift_q(-half_powers)


def _first_nonzero(slots: List[NuTSeries]) -> Optional[dict]:
    for k, r in enumerate(slots):
        for u, e, c in r.coefficients():
            return {"x": k, "u": u, "sigma": -e, "expected": "0", "got": str(c)}
    return None


def wave_residuals(f: int, kmax: int, window: int, size_cap: int = DEFAULT_SIZE_CAP) -> Tuple[List[NuTSeries], List[NuTSeries]]:
    """Per-x^k residuals of the A(x) and psi q-difference equations (m = 1, n = f)."""
    work = window + 2 * kmax + 2
    A = one_row_schur(kmax, work, size_cap)
    psi = wave(1, f, kmax, work, size_cap)
    res_a, res_psi = [], []
    for k in range(1, kmax + 1):
        ra = (
            _t_power(A[k - 1], 1 + 2 * (k - 1)).shift_outer(1)
            - _t_power(A[k - 1], 1).shift_outer(-1)
            - _t_power(A[k], 2 * k)
            + A[k]
        )
        rp = (
            _t_power(psi[k - 1], 1 + 2 * (1 - f) * (k - 1)).shift_outer(1)
            - _t_power(psi[k - 1], 1 - 2 * f * (k - 1)).shift_outer(-1)
            - _t_power(psi[k], 2 * k)
            + psi[k]
        )
        res_a.append(ra.truncate(window))
        res_psi.append(rp.truncate(window))
    return res_a, res_psi


def check_wave_qdiff(f: int, kmax: int, window: int, size_cap: int = DEFAULT_SIZE_CAP) -> List[dict]:
    res_a, res_psi = wave_residuals(f, kmax, window, size_cap)
    failures = []
    for name, slots in (("A", res_a), ("psi", res_psi)):
        # residual list starts at x^1
        d = _first_nonzero([NuTSeries(grid=2)] + slots)
        if d:
            d["equation"] = name
            failures.append(d)
    return failures


# ---------------------------------------------------------------------------
# Specialization nu -> -a^2/q, t -> q^-2 (m = 1)
# ---------------------------------------------------------------------------

def specialize_wave_slot(h_k: NuTSeries, f: int, k: int) -> AQCoeff:
    """(-u)^k H_(k) with u^2 -> -a^2/q, sb -> q, times q^{(f-1)k}."""
    if h_k.grid != 2:
        raise GridViolation("specialization is defined on the m = 1 grid")
    slot = (h_k * ((-1) ** k)).shift_outer(k)
    terms: Dict[int, QWindowSeries] = {}
    for u, s in slot.items():
        if u % 2:
            raise ParityViolation(f"odd power u^{u} in slot {k}")
        e = u // 2
        if e < 0:
            raise ParityViolation(f"negative a-power from u^{u} in slot {k}")
        terms[2 * e] = (s * ((-1) ** e)).shift(-e)
    w = None if slot.window_end is None else slot.window_end - k
    return AQCoeff(terms, w).shift_q((f - 1) * k)


def _tau_log_derivative(l_max: int, window: int) -> XSeries:
    coeffs = [AQCoeff()]
    for j in range(1, l_max + 1):
        inv = geometric_inverse(2 * j, window)
        coeffs.append(
            AQCoeff({2 * j: inv, 0: inv.shift(j) * (-((-1) ** j))}, window)
        )
    return XSeries.build(coeffs, l_max + 1)


def psi_substituted(f: int, l_max: int, q_window: int, size_cap: int = DEFAULT_SIZE_CAP) -> XSeries:
    """psi^{T(1,f)}(-nu^{1/2} q^{f-1} x) at nu = -a^2/q, t = q^-2, by two routes."""
    E = x_exp_from_log_derivative(_tau_log_derivative(l_max, q_window))
    route1 = XSeries(
        E.x_order,
        tuple(c.shift_q(f * (k * k - k) + (f - 1) * k).truncate(q_window) for k, c in enumerate(E.coeffs)),
    )
    waves = wave(1, f, l_max, q_window + l_max + 2, size_cap)
    route2 = XSeries.build(
        [specialize_wave_slot(h, f, k).truncate(q_window) for k, h in enumerate(waves)], l_max + 1
    )
    d = route1.first_discrepancy(route2)
    if d is not None:
        raise RouteMismatch(f"psi routes disagree for f={f}: {discrepancy_record(d)}")
    return route1


# ---------------------------------------------------------------------------
# Superpolynomial generating function
# ---------------------------------------------------------------------------

def superpoly_series(f: int, r_max: int, q_window: int) -> XSeries:
    """P_{r+1} = -q^{(2r+1)f} (a^2 + q^{2r+1}) / (1 - q^{2r+2}) P_r, P_0 = 1."""
    p = [AQCoeff.constant(1, q_window)]
    for r in range(r_max):
        num = AQCoeff({2: QWindowSeries.one(), 0: QWindowSeries.monomial(2 * r + 1)})
        nxt = (num * p[-1]).scale_inner(geometric_inverse(2 * r + 2, q_window))
        p.append((nxt * -1).shift_q((2 * r + 1) * f).truncate(q_window))
    return XSeries.build(p, r_max + 1)


def pbar_closed_form(f: int, r: int, q_window: int) -> AQCoeff:
    """(-1)^r q^{f r^2} prod_{i=1..r} (a^2 + q^{2i-1}) / (1 - q^{2i})."""
    out = AQCoeff.constant((-1) ** r, q_window)
    for i in range(1, r + 1):
        num = AQCoeff({2: QWindowSeries.one(), 0: QWindowSeries.monomial(2 * i - 1)})
        out = (out * num).scale_inner(geometric_inverse(2 * i, q_window)).truncate(q_window)
    return out.shift_q(f * r * r).truncate(q_window)


def check_pbar_qdiff(f: int, r_max: int, q_window: int) -> Optional[dict]:
    """q^{f+1} x P(q^{2f+2} x) = P(q^2 x) - q^f a^2 x P(q^{2f} x) - P(x)."""
    P = superpoly_series(f, r_max, q_window)
    lhs = P.qshift(2 * f + 2).shift_x(1).times_q(f + 1)
    rhs = P.qshift(2) - (P.qshift(2 * f).shift_x(1).times_q(f) * AQCoeff.monomial(2)) - P
    return discrepancy_record(lhs.truncate_q(q_window).first_discrepancy(rhs.truncate_q(q_window)))


def ytilde_family(f: int, l_max: int, q_window: int) -> List[XSeries]:
    """[y~_1, ..., y~_{f+1}], y~_i = P(q^{2i-1} x) / P(q^-1 x)."""
    P = superpoly_series(f, l_max, q_window + l_max + 2)
    denom_inv = P.qshift(-1).x_invert()
    out = [(P.qshift(2 * i - 1) * denom_inv).truncate_q(q_window) for i in range(1, f + 2)]
    y1 = out[0]
    for i in range(2, f + 2):
        rec = (y1.qshift(2 * (i - 1)) * out[i - 2]).truncate_q(q_window)
        d = out[i - 1].first_discrepancy(rec)
        if d is not None:
            raise IdentityViolation(f"y~_{i} recursion fails for f={f}: {discrepancy_record(d)}")
    return out


def ytilde(f: int, i: int, l_max: int, q_window: int) -> XSeries:
    if not 1 <= i <= f + 1:
        raise ValueError(f"i must lie in [1, {f + 1}]")
    return ytilde_family(f, l_max, q_window)[i - 1]
