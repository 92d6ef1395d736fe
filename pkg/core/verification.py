"""Identity-verification suites.

Every check is a function returning None (pass) or a discrepancy record; the
runner wraps it into a VerificationReport, turning raised arithmetic or
identity errors into failures. Checks run in a thread pool; reports keep the
order in which the checks were requested.
"""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel

from core.errors import GridViolation, SchroderError
from core.graded import AQCoeff
from core.path_oracle import (
    base_case_entries,
    enum_slope,
    enum_strip,
    enum_strip_stable,
    strip_count_bound,
    table_to_series,
)
from core.qdiff_solver import (
    check_corollary,
    check_simpys,
    check_slope_equations,
    check_yk_ratio,
    solve_h,
    solve_slope,
    solve_y_family,
    solve_yinf,
)
from core.qseries import QWindowSeries, geometric_inverse
from core.symmetric import Partition, adams_coeffs, adams_coeffs_oracle, partitions_of
from core.torus_knot import (
    check_pbar_qdiff,
    check_wave_qdiff,
    homfly,
    pbar_closed_form,
    psi_substituted,
    superpoly_series,
    ytilde_family,
)
from core.xseries import XSeries, discrepancy_record

log = logging.getLogger(__name__)

CHECK_IDS = (
    "oracle",
    "base_case",
    "totals",
    "simpys",
    "slope_qdiff",
    "y_family",
    "strip_bounds",
    "yinf",
    "yk_ratio",
    "prop12",
    "nonneg",
    "prop13",
    "adams",
    "jt_oracle",
    "wave_qdiff",
    "grid",
    "pbar",
)

CLASSICAL_TOTALS = (1, 2, 6, 22, 90)
DESK_SLOPES = ((1, 1), (1, 2), (1, 3), (2, 3), (3, 4))


class VerificationReport(BaseModel):
    check: str
    params: Dict[str, Any]
    status: Literal["pass", "fail"]
    discrepancy: Optional[Dict[str, Any]] = None
    ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def slug(self) -> str:
        return params_slug(self.params)


def params_slug(params: Dict[str, Any]) -> str:
    if not params:
        return "default"
    return "-".join(
        f"{k}{v}".replace(" ", "").replace(",", "_").replace(";", "+") for k, v in params.items()
    )


@dataclass
class CheckSpec:
    check: str
    params: Dict[str, Any] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------

def _first(failures: List[dict]) -> Optional[dict]:
    return failures[0] if failures else None


def check_oracle(m: int, n: int, lmax: int) -> Optional[dict]:
    fam = solve_slope(m, n, lmax)
    for s in range(m * n + 1):
        expected = table_to_series(enum_slope(m, n, s, lmax), lmax)
        d = discrepancy_record(expected.first_discrepancy(fam.series(s)), s=s)
        if d:
            return d
    return None


def _size_coeff(entries: Dict[Tuple[int, int], int], mn: int) -> AQCoeff:
    # (d, A) with A = mn * j maps to a^(2d) q^j
    return AQCoeff.from_table([(2 * d, A // mn, c) for (d, A), c in entries.items()])


def _first_schur_difference(want: Dict[Partition, int], got: Dict[Partition, int]) -> Optional[dict]:
    for mu in sorted(set(want) | set(got)):
        if want.get(mu, 0) != got.get(mu, 0):
            return {"mu": str(mu), "expected": str(want.get(mu, 0)), "got": str(got.get(mu, 0))}
    return None


def check_base_case(m: int, n: int, lmax: int) -> Optional[dict]:
    mn = m * n
    for l in range(lmax + 1):
        for s in range(max(0, mn * l - (m + n) + 1), mn * l + 1):
            got = _size_coeff(enum_slope(m, n, s, l).at_size(l), mn)
            want = _size_coeff(base_case_entries(m, n, l), mn)
            diff = want.first_difference(got)
            if diff:
                a, q, expected, found = diff
                return {"s": s, "x": l, "a": a, "q": q, "expected": str(expected), "got": str(found)}
    return None


def check_totals(lmax: int = 4) -> Optional[dict]:
    plain = enum_slope(1, 1, 0, lmax, weighted=False).totals()
    weighted = table_to_series(enum_slope(1, 1, 0, lmax)).totals()
    solved = solve_slope(1, 1, lmax).series(0).totals()
    known = list(CLASSICAL_TOTALS[: lmax + 1])
    for l in range(lmax + 1):
        row = {"plain": plain[l], "weighted": weighted[l], "solver": solved[l]}
        if l < len(known):
            row["reference"] = known[l]
        if len(set(row.values())) != 1:
            return {"x": l, "expected": str(plain[l]), "got": json.dumps(row)}
    return None


def check_simpys_identity(m: int, n: int, lmax: int) -> Optional[dict]:
    return _first(check_simpys(solve_slope(m, n, lmax)))


def check_slope_qdiff(m: int, n: int, lmax: int) -> Optional[dict]:
    return _first(check_slope_equations(solve_slope(m, n, lmax)))


def check_y_family(f: int, lmax: int) -> Optional[dict]:
    ys = solve_y_family(f, f + 2, lmax)
    for k, yk in enumerate(ys, start=1):
        expected = table_to_series(enum_strip(f, k, lmax), lmax)
        d = discrepancy_record(expected.first_discrepancy(yk), k=k)
        if d:
            return d
    y0 = solve_slope(1, f, lmax).series(0)
    return discrepancy_record(y0.first_discrepancy(ys[0]), k=1, against="slope")


def check_strip_bounds(f: int, lmax: int, jmax: int) -> Optional[dict]:
    stable = enum_strip_stable(f, lmax, jmax)
    prev: Dict = {}
    for k in range(1, stable.k_star + 2):
        cur = enum_strip(f, k, lmax, j_max=jmax).entries
        for (d, j, l), c in cur.items():
            if c > strip_count_bound(j, f, l):
                return {"k": k, "a": 2 * d, "q": j, "x": l, "expected": f"<= {strip_count_bound(j, f, l)}", "got": str(c)}
        for key, c in prev.items():
            if cur.get(key, 0) < c:
                d, j, l = key
                return {"k": k, "a": 2 * d, "q": j, "x": l, "expected": f">= {c}", "got": str(cur.get(key, 0))}
        prev = cur
    return None


def check_yinf(f: int, lmax: int, qorder: int) -> Optional[dict]:
    yinf = solve_yinf(f, lmax, qorder)
    jmax = min(qorder - 1, 16)
    strip = table_to_series(enum_strip_stable(f, lmax, jmax), lmax)
    d = discrepancy_record(strip.first_discrepancy(yinf.truncate_q(jmax + 1)), against="stable_strip")
    if d:
        return d
    return check_corollary(f, lmax, qorder)


def check_yk(f: int, lmax: int, qorder: int) -> Optional[dict]:
    return _first(check_yk_ratio(f, f + 1, lmax, qorder))


def check_prop12(f: int, lmax: int, qorder: int) -> Optional[dict]:
    h = solve_h(f, lmax, qorder)
    psi = psi_substituted(f, lmax, qorder)
    return discrepancy_record(h.first_discrepancy(psi))


def _negative(series: XSeries) -> Optional[dict]:
    for l, c in enumerate(series.coeffs):
        for a, q, v in c.coefficients():
            if v < 0:
                return {"x": l, "a": a, "q": q, "expected": ">= 0", "got": str(v)}
    return None


def check_nonneg(f: int, lmax: int, qorder: int) -> Optional[dict]:
    d = _negative(solve_h(f, lmax, qorder))
    if d:
        return dict(d, series="h")
    d = _negative(psi_substituted(f, lmax, qorder))
    return dict(d, series="psi") if d else None


def check_prop13(f: int, lmax: int, qorder: int) -> Optional[dict]:
    ys = solve_y_family(f, f + 1, lmax)
    yt = ytilde_family(f, lmax, qorder)
    for i, (y, t) in enumerate(zip(ys, yt), start=1):
        d = discrepancy_record(y.truncate_q(qorder).first_discrepancy(t), i=i)
        if d:
            return d
    return None


def check_adams_identity(max_size: int = 4, size_cap: int = 8) -> Optional[dict]:
    for size in range(max_size + 1):
        for lam in partitions_of(size):
            d = _first_schur_difference({lam: 1}, adams_coeffs(lam, 1, size_cap))
            if d:
                return dict(d, partition=str(lam))
    return None


def check_jt_oracle(max_size: int = 3, max_m: int = 3) -> Optional[dict]:
    for size in range(1, max_size + 1):
        for lam in partitions_of(size):
            for m in range(1, max_m + 1):
                fast = adams_coeffs(lam, m, size_cap=max(9, m * size))
                slow = adams_coeffs_oracle(lam, m)
                d = _first_schur_difference(slow, fast)
                if d:
                    return dict(d, partition=str(lam), m=m)
    return None


def check_wave(f: int, kmax: int, qorder: int) -> Optional[dict]:
    return _first(check_wave_qdiff(f, kmax, qorder))


def check_grid(m: int, n: int, qorder: int, partitions: str = "1;2") -> Optional[dict]:
    for text in partitions.split(";"):
        try:
            homfly(Partition.parse(text), m, n, qorder)
        except GridViolation as exc:
            if exc.locator is None:
                raise
            return dict(exc.locator, partition=text)
    return None


def check_pbar(f: int, rmax: int, qorder: int) -> Optional[dict]:
    d = check_pbar_qdiff(f, rmax, qorder)
    if d:
        return dict(d, equation="qdiff")
    P = superpoly_series(f, rmax, qorder)
    p1 = AQCoeff(
        {2: QWindowSeries.one(), 0: QWindowSeries.monomial(1)}
    ).scale_inner(geometric_inverse(2, qorder)).shift_q(f) * -1
    diff = p1.first_difference(P[1]) if rmax >= 1 else None
    if diff:
        a, q, want, got = diff
        return {"x": 1, "a": a, "q": q, "expected": str(want), "got": str(got), "equation": "P1"}
    closed = XSeries.build([pbar_closed_form(f, r, qorder) for r in range(rmax + 1)], rmax + 1)
    return discrepancy_record(closed.first_discrepancy(P), equation="closed_form")


CHECKS: Dict[str, Callable[..., Optional[dict]]] = {
    "oracle": check_oracle,
    "base_case": check_base_case,
    "totals": check_totals,
    "simpys": check_simpys_identity,
    "slope_qdiff": check_slope_qdiff,
    "y_family": check_y_family,
    "strip_bounds": check_strip_bounds,
    "yinf": check_yinf,
    "yk_ratio": check_yk,
    "prop12": check_prop12,
    "nonneg": check_nonneg,
    "prop13": check_prop13,
    "adams": check_adams_identity,
    "jt_oracle": check_jt_oracle,
    "wave_qdiff": check_wave,
    "grid": check_grid,
    "pbar": check_pbar,
}


# ---------------------------------------------------------------------------
# profiles and runner
# ---------------------------------------------------------------------------

def desk_profile() -> List[CheckSpec]:
    specs: List[CheckSpec] = []
    for m, n in DESK_SLOPES:
        specs.append(CheckSpec("oracle", {"m": m, "n": n, "lmax": 4 if m == 1 else 3}))
    for m, n in DESK_SLOPES:
        specs.append(CheckSpec("base_case", {"m": m, "n": n, "lmax": 3}))
    specs.append(CheckSpec("totals", {"lmax": 4}))
    for m, n in ((2, 3), (3, 4)):
        specs.append(CheckSpec("simpys", {"m": m, "n": n, "lmax": 3}))
    for m, n in DESK_SLOPES:
        specs.append(CheckSpec("slope_qdiff", {"m": m, "n": n, "lmax": 3}))
    for f in (1, 2, 3):
        specs.append(CheckSpec("y_family", {"f": f, "lmax": 3}))
    for f in (1, 2):
        specs.append(CheckSpec("strip_bounds", {"f": f, "lmax": 3, "jmax": 16}))
    for f in (1, 2):
        specs.append(CheckSpec("yinf", {"f": f, "lmax": 3, "qorder": 32}))
    for f in (1, 2):
        specs.append(CheckSpec("yk_ratio", {"f": f, "lmax": 3, "qorder": 32}))
    for f in (1, 2, 3):
        specs.append(CheckSpec("prop12", {"f": f, "lmax": 5, "qorder": 40}))
    for f in (1, 2, 3):
        specs.append(CheckSpec("nonneg", {"f": f, "lmax": 5, "qorder": 40}))
    for f in (1, 2, 3):
        specs.append(CheckSpec("prop13", {"f": f, "lmax": 4, "qorder": 40}))
    specs.append(CheckSpec("adams", {"max_size": 4}))
    specs.append(CheckSpec("jt_oracle", {"max_size": 3, "max_m": 3}))
    for f in (1, 2, 3):
        specs.append(CheckSpec("wave_qdiff", {"f": f, "kmax": 4, "qorder": 40}))
    for m, n in ((2, 3), (3, 4)):
        specs.append(CheckSpec("grid", {"m": m, "n": n, "qorder": 24}))
    for f in (1, 2, 3):
        specs.append(CheckSpec("pbar", {"f": f, "rmax": 5, "qorder": 40}))
    return specs


PROFILES: Dict[str, Callable[[], List[CheckSpec]]] = {"desk": desk_profile}


def run_check(spec: CheckSpec) -> VerificationReport:
    fn = CHECKS[spec.check]
    t0 = time.perf_counter()
    try:
        discrepancy = fn(**spec.params)
    except (SchroderError, ArithmeticError, AssertionError) as e:
        discrepancy = {"error": f"{type(e).__name__}: {e}"}
    ms = round((time.perf_counter() - t0) * 1000, 1)
    status = "pass" if discrepancy is None else "fail"
    if status == "fail":
        log.warning("%s %s failed: %s", spec.check, params_slug(spec.params), discrepancy)
    else:
        log.info("%s %s passed in %.0f ms", spec.check, params_slug(spec.params), ms)
    return VerificationReport(check=spec.check, params=spec.params, status=status, discrepancy=discrepancy, ms=ms)


def run_checks(specs: List[CheckSpec], threads: int = 1) -> List[VerificationReport]:
    if threads <= 1 or len(specs) <= 1:
        return [run_check(s) for s in specs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        # map keeps submission order
        return list(pool.map(run_check, specs))


def write_reports(reports: List[VerificationReport], out_dir: Path) -> List[Path]:
    from core.report_verification import build_verification_summary_md

    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for r in reports:
        p = out_dir / f"{r.check}__{r.slug}.json"
        p.write_text(json.dumps(r.model_dump(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
        written.append(p)
    everything = out_dir / "reports.json"
    everything.write_text(json.dumps([r.model_dump() for r in reports], indent=2, sort_keys=True) + "\n", encoding="utf-8")
    summary = out_dir / "summary.md"
    summary.write_text(build_verification_summary_md(reports), encoding="utf-8")
    return written + [everything, summary]
