"""Verification run summary (Markdown)."""

from __future__ import annotations

from collections import OrderedDict
from typing import TYPE_CHECKING, Dict, List

from core.utils_format import fmt_discrepancy, fmt_ms

if TYPE_CHECKING:
    from core.verification import VerificationReport


CHECK_TITLES = {
    "oracle": "Solver equals path enumeration (slope m/n)",
    "base_case": "Closed form when no midway vertex survives",
    "totals": "Classical Schroder totals at a = q = 1",
    "simpys": "Product identity for m | s or n | s",
    "slope_qdiff": "Slope-family q-difference equations",
    "y_family": "y_k family equals strip enumeration",
    "strip_bounds": "Monotone and bounded strip counts",
    "yinf": "y_inf functional equation and h(x) y_inf(-x) = 1",
    "yk_ratio": "y_k(x) y_inf(q^2k x) = y_inf(x)",
    "prop12": "h equals the specialized wave function",
    "nonneg": "Non-negative coefficients of h and psi",
    "prop13": "y_i equals superpolynomial ratios",
    "adams": "Adams coefficients at m = 1",
    "jt_oracle": "Adams coefficients against Jacobi-Trudi",
    "wave_qdiff": "Wave function q-difference equations",
    "grid": "HOMFLY-PT exponents on the t^(1/2) grid",
    "pbar": "Superpolynomial series recursion and q-difference equation",
}


def _fmt_params(params: Dict) -> str:
    if not params:
        return "—"
    return ", ".join(f"{k}={v}" for k, v in params.items())


def build_verification_summary_md(reports: List["VerificationReport"]) -> str:
    n_pass = sum(1 for r in reports if r.passed)
    n_fail = len(reports) - n_pass
    total_ms = sum(r.ms for r in reports)

    by_check: "OrderedDict[str, List[VerificationReport]]" = OrderedDict()
    for r in reports:
        by_check.setdefault(r.check, []).append(r)

    md = []
    md.append("# Verification summary\n\n")
    md.append(f"**Checks:** {len(reports)}\n")
    md.append(f"**Passed:** {n_pass}\n")
    md.append(f"**Failed:** {n_fail}\n")
    md.append(f"**Wall time:** {fmt_ms(total_ms)}\n")
    md.append("\nA pass means exact agreement up to the truncation window recorded in the parameters.\n")
    md.append("\n---\n\n")

    for check, rows in by_check.items():
        md.append(f"## {check}: {CHECK_TITLES.get(check, check)}\n\n")
        md.append("| Parameters | Status | Time | First discrepancy |\n")
        md.append("|---|---|---|---|\n")
        for r in rows:
            status = "pass" if r.passed else "**FAIL**"
            md.append(f"| {_fmt_params(r.params)} | {status} | {fmt_ms(r.ms)} | {fmt_discrepancy(r.discrepancy)} |\n")
        md.append("\n")

    if n_fail:
        md.append("---\n\n## Failures\n\n")
        for r in reports:
            if not r.passed:
                md.append(f"- `{r.check}` ({_fmt_params(r.params)}): {fmt_discrepancy(r.discrepancy)}\n")
        md.append("\n")

    return "".join(md)
