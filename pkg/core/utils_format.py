"""Text, JSON and CSV renderings of series, tables and timings."""

from __future__ import annotations

import csv
import io
from typing import TYPE_CHECKING, Any, Dict, List, Optional

if TYPE_CHECKING:
    from core.graded import GradedSeries, NuTSeries
    from core.path_oracle import WeightTable
    from core.qseries import QWindowSeries
    from core.xseries import XSeries


def _monomial(c: int, var: str, e: int, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    mag = abs(c)
    if e == 0:
        body = str(mag)
    else:
        power = var if e == 1 else f"{var}^{e}"
        body = power if mag == 1 else f"{mag}{power}"
    if first:
        return f"{sign}{body}"
    return f" {sign} {body}"


def fmt_laurent(s: "QWindowSeries", var: str = "q") -> str:
    parts = [_monomial(c, var, e, i == 0) for i, (e, c) in enumerate(s.items())]
    text = "".join(parts) or "0"
    if s.window_end is not None:
        text += f" + O({var}^{s.window_end})"
    return text


def fmt_graded(g: "GradedSeries") -> str:
    if g.is_zero:
        return "0" if g.window_end is None else f"O(q^{g.window_end})"
    inner = "q" if g.outer_name == "a" else "sb"
    chunks = []
    for e, s in g.items():
        body = "".join(_monomial(c, inner, k, i == 0) for i, (k, c) in enumerate(s.items()))
        chunks.append(f"{g.outer_name}^{e}*({body})" if e else f"({body})")
    text = " + ".join(chunks)
    if g.window_end is not None:
        text += f" + O({inner}^{g.window_end})"
    return text


def fmt_xseries(f: "XSeries") -> str:
    lines = [f"[x^{l}] {fmt_graded(c)}" for l, c in enumerate(f.coeffs)]
    return "\n".join(lines)


def fmt_ms(ms: Optional[float]) -> str:
    if ms is None:
        return "—"
    try:
        return f"{float(ms):,.0f} ms"
    except Exception:
        return "—"


def fmt_discrepancy(d: Optional[Dict[str, Any]]) -> str:
    if not d:
        return "—"
    if "error" in d:
        return str(d["error"])
    where = ", ".join(f"{k}={d[k]}" for k in ("x", "a", "q", "mu") if k in d)
    return f"{where}: expected {d.get('expected')}, got {d.get('got')}"


# ---------------------------------------------------------------------------
# machine-readable forms
# ---------------------------------------------------------------------------

def xseries_to_json(f: "XSeries") -> Dict[str, Any]:
    coeffs = []
    for l, c in enumerate(f.coeffs):
        terms = [{"a": a, "q": q, "c": str(v)} for a, q, v in c.coefficients()]
        coeffs.append({"l": l, "terms": terms})
    return {"x_order": f.x_order, "q_window": f.q_window, "coeffs": coeffs}


def nut_to_json(h: "NuTSeries") -> Dict[str, Any]:
    # stored in ascending sigma-bar = sigma**-1; emitted with true sigma exponents
    terms = []
    for u, s in h.items():
        terms.append({"u": u, "sigma": [{"e": -e, "c": str(c)} for e, c in s.items()]})
    return {"grid": h.grid, "sigma_bar_window": h.window_end, "terms": terms}


TABLE_COLUMNS = ["family", "m", "n", "s_or_k", "d", "A", "l", "count"]


def table_rows(table: "WeightTable") -> List[Dict[str, Any]]:
    fam = table.family
    rows = []
    for (d, A, l), count in sorted(table.entries.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1])):
        rows.append(
            {
                "family": fam.kind.value,
                "m": fam.m,
                "n": fam.n,
                "s_or_k": fam.s_or_k,
                "d": d,
                "A": A,
                "l": l,
                "count": count,
            }
        )
    return rows


def table_to_csv(table: "WeightTable") -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=TABLE_COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in table_rows(table):
        w.writerow(row)
    return buf.getvalue()


def table_to_json(table: "WeightTable") -> Dict[str, Any]:
    fam = table.family
    return {
        "family": fam.kind.value,
        "m": fam.m,
        "n": fam.n,
        "s_or_k": fam.s_or_k,
        "area_unit": str(table.area_unit),
        "l_max": table.l_max,
        "entries": [
            {"d": r["d"], "A": r["A"], "l": r["l"], "count": str(r["count"])} for r in table_rows(table)
        ],
    }
