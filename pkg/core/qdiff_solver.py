"""Generating functions of the path families from their q-difference equations.

Nothing here walks a path: the slope family is built from the decomposition
recurrences on the counts, the strip families and h order by order in x.
Path enumeration (core.path_oracle) is the independent check.
"""

from __future__ import annotations

import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple

from core.errors import (
    FunctionalEquationViolation,
    NegativeCoefficient,
    NegativeCount,
    NonIntegralExponent,
    RecursionGuardTripped,
    StabilizationFailure,
)
from core.graded import AQCoeff
from core.path_oracle import FamilyKind, FamilyTag, WeightTable, check_slope, table_to_series
from core.qseries import QWindowSeries, geometric_inverse
from core.xseries import XSeries, discrepancy_record, product

log = logging.getLogger(__name__)

Counts = Dict[Tuple[int, int], int]  # (d, A) -> count

A2 = AQCoeff.monomial(2)


def slope_constants(m: int, n: int, s: int) -> Tuple[int, int, int]:
    """(alpha_s, beta_s, eps_s): alpha*m = s mod n, beta*n = s mod m."""
    if not 0 <= s < m * n:
        raise ValueError(f"s={s} outside [0, {m * n})")
    alpha = next(a for a in range(n) if (a * m - s) % n == 0)
    beta = next(b for b in range(m) if (b * n - s) % m == 0)
    num = alpha * m + beta * n - s
    if num % (m * n):
        raise NonIntegralExponent(f"eps_s = {num}/{m * n} for (m,n,s)=({m},{n},{s})")
    eps = num // (m * n)
    assert eps in (0, 1), eps
    return alpha, beta, eps


@dataclass
class SlopeFamily:
    m: int
    n: int
    l_max: int
    # s -> l -> {(d, A): count}, A in units of 1/(2mn)
    counts: Dict[int, Dict[int, Counts]] = field(default_factory=dict)

    @property
    def mn(self) -> int:
        return self.m * self.n

    def table(self, s: int) -> WeightTable:
        t = WeightTable(FamilyTag(FamilyKind.SLOPE, self.m, self.n, s), Fraction(1, 2 * self.mn), self.l_max)
        for l, row in self.counts[s].items():
            for (d, A), c in row.items():
                t.add((d, A, l), c)
        return t

    def series(self, s: int) -> XSeries:
        return table_to_series(self.table(s), self.l_max)


class _SlopeSolver:
    def __init__(self, m: int, n: int, depth_limit: int):
        self.m, self.n = m, n
        self.M = m * n
        self.memo: Dict[Tuple[int, int], Counts] = {}
        self.active: Set[Tuple[int, int]] = set()
        self.depth_limit = depth_limit
        self.depth = 0
        self.constants = {s: slope_constants(m, n, s) for s in range(self.M)}

    def get(self, s: int, l: int) -> Counts:
        if l < 0:
            return {}
        key = (s, l)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if key in self.active:
            raise RecursionGuardTripped(f"cyclic dependency at s={s}, l={l}")
        self.depth += 1
        if self.depth > self.depth_limit:
            raise RecursionGuardTripped(f"recursion deeper than {self.depth_limit} at s={s}, l={l}")
        self.active.add(key)
        try:
            out = self._mn_case(l) if s == self.M else self._general_case(s, l)
        finally:
            self.active.discard(key)
            self.depth -= 1
        for (d, A), c in out.items():
            if c < 0:
                raise NegativeCount(f"n[s={s}](d={d}, A={A}, l={l}) = {c}")
        self.memo[key] = out
        return out

    def _mn_case(self, l: int) -> Counts:
        M = self.M
        out: Counter = Counter()
        for (d, A), c in self.get(0, l - 1).items():
            out[(d, A + M * M * (2 * l - 1))] += c
        if l == 1:
            out[(1, M * (M - 1))] += 1
        return dict(out)

    def _general_case(self, s: int, l: int) -> Counts:
        m, n, M = self.m, self.n, self.M
        alpha, beta, eps = self.constants[s]
        out: Counter = Counter(self.get(s + 1, l))
        if s == 0 and l == 0:
            out[(0, 0)] += 1
        lo_s, hi_s = beta * n + 1, alpha * m + 1
        total = l + eps
        for l_lo in range(1, total):
            for l_hi in range(1, total - l_lo + 1):
                l_mid = total - l_lo - l_hi
                left = self.get(lo_s, l_lo)
                if not left:
                    continue
                right = self.get(hi_s, l_hi)
                if not right:
                    continue
                mid = self.get(0, l_mid)
                if not mid:
                    continue
                shift = (
                    -M * 2 * beta * n * l_lo + beta * beta * n * n
                    - M * 2 * alpha * m * l_hi + alpha * alpha * m * m
                    + M * 2 * s * l - s * s
                )
                for (d1, A1), c1 in left.items():
                    for (d0, A0), c0 in mid.items():
                        c10 = c1 * c0
                        for (d2, A2_), c2 in right.items():
                            out[(d1 + d0 + d2, A1 + A0 + A2_ + shift)] += c10 * c2
        return {k: v for k, v in out.items() if v}


def solve_slope(m: int, n: int, l_max: int) -> SlopeFamily:
    check_slope(m, n)
    if l_max < 0:
        raise ValueError("l_max must be non-negative")
    t0 = time.perf_counter()
    M = m * n
    solver = _SlopeSolver(m, n, depth_limit=4 * (M + 2) * (l_max + 2))
    fam = SlopeFamily(m, n, l_max)
    # l ascending, s descending keeps the live recursion shallow
    for l in range(l_max + 1):
        for s in range(M, -1, -1):
            solver.get(s, l)
    for s in range(M + 1):
        fam.counts[s] = {}
        for l in range(l_max + 1):
            row = solver.get(s, l)
            for (d, A) in row:
                if A % M:
                    raise NonIntegralExponent(f"scaled area {A} not divisible by {M} (s={s}, l={l})")
            fam.counts[s][l] = dict(row)
    log.info("solve_slope m=%d n=%d lmax=%d: %d memo entries in %.0f ms",
             m, n, l_max, len(solver.memo), (time.perf_counter() - t0) * 1000)
    return fam


def check_simpys(family: SlopeFamily) -> List[dict]:
    """y[s] = y[s+1] * y[0](q^{2s} x) whenever m | s or n | s."""
    m, n, M = family.m, family.n, family.mn
    y0 = family.series(0)
    failures = []
    for s in range(1, M):
        if s % m and s % n:
            continue
        lhs = family.series(s)
        rhs = family.series(s + 1) * y0.qshift(2 * s)
        d = discrepancy_record(lhs.first_discrepancy(rhs), s=s)
        if d:
            failures.append(d)
    return failures


def check_slope_equations(family: SlopeFamily) -> List[dict]:
    """Substitute the solved family into the three q-difference equations."""
    m, n, M = family.m, family.n, family.mn
    L = family.l_max + 1
    y = {s: family.series(s) for s in range(M + 1)}
    one = XSeries.one(L)
    failures = []

    d = one.first_discrepancy(y[0] * (one - y[1]))
    if d:
        failures.append(discrepancy_record(d, equation="a"))

    for s in range(1, M):
        alpha, beta, eps = slope_constants(m, n, s)
        lhs = (y[s] - y[s + 1]).shift_x(eps)
        rhs = (
            y[0].qshift(2 * s)
            * y[beta * n + 1].qshift(2 * (s - beta * n))
            * y[alpha * m + 1].qshift(2 * (s - alpha * m))
        ).times_q(M * eps * eps - 2 * alpha * beta)
        d = lhs.first_discrepancy(rhs)
        if d:
            failures.append(discrepancy_record(d, equation="b", s=s))

    rhs = XSeries.monomial(1, A2.shift_q(M - 1), L) + y[0].qshift(2 * M).shift_x(1).times_q(M)
    d = y[M].first_discrepancy(rhs)
    if d:
        failures.append(discrepancy_record(d, equation="c"))
    return failures


# ---------------------------------------------------------------------------
# slope 1/f strip families
# ---------------------------------------------------------------------------

def _y_k_from_y1(y1: XSeries, k: int) -> XSeries:
    return product([y1.qshift(2 * j) for j in range(k)], y1.x_order)


def solve_y_family(f: int, kmax: int, l_max: int) -> List[XSeries]:
    """y_1..y_kmax as exact polynomials up to x^l_max."""
    if f < 1 or kmax < 1 or l_max < 0:
        raise ValueError("solve_y_family needs f, kmax >= 1 and l_max >= 0")
    L = l_max + 1
    coeffs: List[AQCoeff] = [AQCoeff.constant(1)]
    for l in range(L - 1):
        y1 = XSeries.build(coeffs, l + 1)
        yf = _y_k_from_y1(y1, f)
        yf1 = yf * y1.qshift(2 * f)
        coeffs.append(yf1[l].shift_q(f) + yf[l].shift_outer(2).shift_q(f - 1))
    y1 = XSeries.build(coeffs, L)
    ys = [y1]
    for k in range(2, max(kmax, f + 1) + 1):
        ys.append(y1.qshift(2 * (k - 1)) * ys[-1])
    return ys[:kmax]


def _yinf_residual(yinf: XSeries, f: int) -> XSeries:
    inv = yinf.x_invert()
    return (
        inv.qshift(2 * (f + 1)).shift_x(1).times_q(f)
        + (inv.qshift(2 * f).shift_x(1).times_q(f - 1) * A2)
        - inv.qshift(2)
        + inv
    )


def solve_yinf(f: int, l_max: int, q_window: int) -> XSeries:
    if q_window <= 0:
        raise ValueError("q window must be positive")
    L = l_max + 1
    y1 = solve_y_family(f, 1, l_max)[0].truncate_q(q_window)
    guard = q_window + f + 2
    prev = y1
    k = 1
    while True:
        k += 1
        if k > guard:
            raise StabilizationFailure(f"y_k for f={f} did not stabilize by k={guard}")
        cur = (y1.qshift(2 * (k - 1)) * prev).truncate_q(q_window)
        if cur.agrees_with(prev):
            break
        prev = cur
    log.debug("y_k for f=%d stable to q^%d at k=%d", f, q_window, k - 1)
    yinf = cur
    d = _yinf_residual(yinf, f).first_discrepancy(XSeries.zero(L))
    if d is not None:
        raise FunctionalEquationViolation(f"y_inf equation for f={f} fails at {discrepancy_record(d)}")
    return yinf


def check_yk_ratio(f: int, kmax: int, l_max: int, q_window: int) -> List[dict]:
    """y_k(x) * y_inf(q^{2k} x) = y_inf(x) to the window."""
    yinf = solve_yinf(f, l_max, q_window)
    failures = []
    for k, yk in enumerate(solve_y_family(f, kmax, l_max), start=1):
        lhs = (yk.truncate_q(q_window) * yinf.qshift(2 * k)).truncate_q(q_window)
        d = discrepancy_record(yinf.first_discrepancy(lhs), k=k)
        if d:
            failures.append(d)
    return failures


def solve_h(f: int, l_max: int, q_window: int) -> XSeries:
    if q_window <= 0:
        raise ValueError("q window must be positive")
    h: List[AQCoeff] = [AQCoeff.constant(1, q_window)]
    for l in range(1, l_max + 1):
        factor = AQCoeff(
            {
                0: QWindowSeries.monomial(f + 2 * (f + 1) * (l - 1)),
                2: QWindowSeries.monomial(f - 1 + 2 * f * (l - 1)),
            }
        )
        nxt = (factor * h[-1]).scale_inner(geometric_inverse(2 * l, q_window)).truncate(q_window)
        for a, e, c in nxt.coefficients():
            if c < 0:
                raise NegativeCoefficient(f"[x^{l}] h has coefficient {c} at a^{a} q^{e}")
        h.append(nxt)
    return XSeries.build(h, l_max + 1)


def check_corollary(f: int, l_max: int, q_window: int) -> Optional[dict]:
    """h(x) * y_inf(-x) = 1 to the window."""
    h = solve_h(f, l_max, q_window)
    yinf = solve_yinf(f, l_max, q_window)
    prod = (h * yinf.x_scale(-1)).truncate_q(q_window)
    return discrepancy_record(XSeries.one(l_max + 1).first_discrepancy(prod))
