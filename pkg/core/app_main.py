APP_VERSION = "schroder-qdiff v1"

import inspect
import json
import logging
import traceback
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from core.errors import SchroderError
from core.settings import Settings, load_settings, setup_logging

console = Console(stderr=True)
log = logging.getLogger("schroder")

app = typer.Typer(
    name="schroder",
    help=(
        "Generalized Schroder paths, their q-difference equations and torus-knot invariants.\n\n"
        "Exit codes: 0=pass, 1=failure or runtime error, 2=usage error."
    ),
    add_completion=False,
    no_args_is_help=True,
)
enumerate_app = typer.Typer(help="Brute-force path enumeration (weight tables).", no_args_is_help=True)
solve_app = typer.Typer(help="Generating functions from the q-difference equations.", no_args_is_help=True)
knot_app = typer.Typer(help="Torus-knot invariants, wave functions and superpolynomial series.", no_args_is_help=True)
app.add_typer(enumerate_app, name="enumerate")
app.add_typer(solve_app, name="solve")
app.add_typer(knot_app, name="knot")


class _State:
    settings: Settings = None
    verbose: bool = False


STATE = _State()

USAGE_ERRORS = (ValueError, ValidationError, typer.BadParameter)


def _settings() -> Settings:
    if STATE.settings is None:
        STATE.settings = load_settings()
    return STATE.settings


def _run_safe(fn: Callable[[], Optional[int]]) -> None:
    try:
        code = fn()
    except typer.Exit:
        raise
    except USAGE_ERRORS as e:
        console.print(f"[red]usage error:[/red] {type(e).__name__}: {e}")
        raise typer.Exit(2)
    except (SchroderError, ArithmeticError) as e:
        console.print(f"[red]error:[/red] {type(e).__name__}: {e}")
        if STATE.verbose:
            console.print(traceback.format_exc())
        raise typer.Exit(1)
    except Exception as e:
        console.print(f"[red]unexpected error:[/red] {type(e).__name__}: {e}")
        if STATE.verbose:
            console.print(traceback.format_exc())
        raise typer.Exit(1)
    if code:
        raise typer.Exit(code)


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        typer.echo(text, nl=not text.endswith("\n"))
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    console.print(f"wrote {out}")


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _lmax(lmax: Optional[int], xorder: Optional[int], default: Optional[int] = None) -> int:
    # --xorder is exclusive, --lmax inclusive
    if lmax is not None:
        return lmax
    if xorder is not None:
        if xorder < 1:
            raise typer.BadParameter("--xorder must be at least 1")
        return xorder - 1
    return (_settings().x_order - 1) if default is None else default


def _qorder(qorder: Optional[int]) -> int:
    return _settings().q_window if qorder is None else qorder


def _version_callback(value: bool) -> None:
    if value:
        typer.echo(APP_VERSION)
        raise typer.Exit()


@app.callback()
def _root(
    verbose: bool = typer.Option(False, "--verbose", help="Debug logging and tracebacks."),
    threads: Optional[int] = typer.Option(None, "--threads", help="Work-pool size (default SCHRODER_THREADS)."),
    version: bool = typer.Option(False, "--version", callback=_version_callback, is_eager=True, help="Show version."),
) -> None:
    try:
        settings = load_settings()
        if threads is not None:
            settings = settings.model_copy(update={"threads": max(1, threads)})
    except ValidationError as e:
        console.print(f"[red]usage error:[/red] invalid environment configuration: {e}")
        raise typer.Exit(2)
    STATE.settings = settings
    STATE.verbose = verbose
    setup_logging("DEBUG" if verbose else settings.log_level)


FORMAT_HELP = "Output format: json or csv."


def _check_format(fmt: str, allowed=("json", "csv")) -> str:
    fmt = fmt.lower()
    if fmt not in allowed:
        raise typer.BadParameter(f"--format must be one of {', '.join(allowed)}")
    return fmt


# =============================
# Enumerate
# =============================


@enumerate_app.command("slope")
def enumerate_slope(
    m: int = typer.Option(..., "--m"),
    n: int = typer.Option(..., "--n"),
    s: int = typer.Option(0, "--s"),
    lmax: Optional[int] = typer.Option(None, "--lmax"),
    xorder: Optional[int] = typer.Option(None, "--xorder"),
    unweighted: bool = typer.Option(False, "--unweighted", help="Count paths only."),
    check_geometry: bool = typer.Option(False, "--check-geometry", help="Cross-check areas with polygons."),
    fmt: str = typer.Option("csv", "--format", help=FORMAT_HELP),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """Paths to (nl, ml) below ny = mx with midway vertices below ny = mx - s."""

    def _impl():
        from core.path_oracle import enum_slope
        from core.utils_format import table_to_csv, table_to_json

        f = _check_format(fmt)
        table = enum_slope(
            m, n, s, _lmax(lmax, xorder, 3),
            weighted=not unweighted, check_geometry=check_geometry, workers=_settings().threads,
        )
        _emit(table_to_csv(table) if f == "csv" else _dump(table_to_json(table)), out)

    _run_safe(_impl)


@enumerate_app.command("strip")
def enumerate_strip(
    f: int = typer.Option(..., "--f"),
    k: int = typer.Option(..., "--k"),
    lmax: Optional[int] = typer.Option(None, "--lmax"),
    xorder: Optional[int] = typer.Option(None, "--xorder"),
    check_geometry: bool = typer.Option(False, "--check-geometry"),
    fmt: str = typer.Option("csv", "--format", help=FORMAT_HELP),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """Paths to (fl+k-1, l) right of x = fy."""

    def _impl():
        from core.path_oracle import enum_strip
        from core.utils_format import table_to_csv, table_to_json

        fm = _check_format(fmt)
        table = enum_strip(f, k, _lmax(lmax, xorder, 3), check_geometry=check_geometry, workers=_settings().threads)
        _emit(table_to_csv(table) if fm == "csv" else _dump(table_to_json(table)), out)

    _run_safe(_impl)


@enumerate_app.command("strip-stable")
def enumerate_strip_stable(
    f: int = typer.Option(..., "--f"),
    lmax: Optional[int] = typer.Option(None, "--lmax"),
    xorder: Optional[int] = typer.Option(None, "--xorder"),
    jmax: int = typer.Option(16, "--jmax"),
    fmt: str = typer.Option("csv", "--format", help=FORMAT_HELP),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """Stabilized strip counts (no endpoint) for area index j <= jmax."""

    def _impl():
        from core.path_oracle import enum_strip_stable
        from core.utils_format import table_to_csv, table_to_json

        fm = _check_format(fmt)
        table = enum_strip_stable(f, _lmax(lmax, xorder, 3), jmax, workers=_settings().threads)
        _emit(table_to_csv(table) if fm == "csv" else _dump(table_to_json(table)), out)

    _run_safe(_impl)


# =============================
# Solve
# =============================


def _tagged(series, **tags) -> Dict[str, Any]:
    from core.utils_format import xseries_to_json

    body = dict(tags)
    body.update(xseries_to_json(series))
    return body


@solve_app.command("slope")
def solve_slope_cmd(
    m: int = typer.Option(..., "--m"),
    n: int = typer.Option(..., "--n"),
    s: Optional[int] = typer.Option(None, "--s", help="Only this s (default: all 0..mn)."),
    lmax: Optional[int] = typer.Option(None, "--lmax"),
    xorder: Optional[int] = typer.Option(None, "--xorder"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """y^[s] for the slope m/n family."""

    def _impl():
        from core.qdiff_solver import solve_slope

        L = _lmax(lmax, xorder)
        fam = solve_slope(m, n, L)
        wanted = range(m * n + 1) if s is None else [s]
        docs = []
        for ss in wanted:
            if ss not in fam.counts:
                raise typer.BadParameter(f"--s must lie in [0, {m * n}]")
            series = fam.series(ss)
            log.info("y[%d] totals at a=q=1: %s", ss, series.totals())
            docs.append(_tagged(series, family="slope", m=m, n=n, s=ss, Lmax=L, Omega=None))
        _emit(_dump(docs[0] if s is not None else docs), out)

    _run_safe(_impl)


@solve_app.command("y")
def solve_y_cmd(
    f: int = typer.Option(..., "--f"),
    kmax: int = typer.Option(..., "--kmax"),
    lmax: Optional[int] = typer.Option(None, "--lmax"),
    xorder: Optional[int] = typer.Option(None, "--xorder"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """y_1..y_kmax for the slope 1/f strips."""

    def _impl():
        from core.qdiff_solver import solve_y_family

        L = _lmax(lmax, xorder)
        ys = solve_y_family(f, kmax, L)
        _emit(_dump([_tagged(y, family="strip", f=f, k=k, Lmax=L, Omega=None) for k, y in enumerate(ys, 1)]), out)

    _run_safe(_impl)


@solve_app.command("yinf")
def solve_yinf_cmd(
    f: int = typer.Option(..., "--f"),
    lmax: Optional[int] = typer.Option(None, "--lmax"),
    xorder: Optional[int] = typer.Option(None, "--xorder"),
    qorder: Optional[int] = typer.Option(None, "--qorder"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """y_inf to the q-window; its functional equation is checked on the way."""

    def _impl():
        from core.qdiff_solver import solve_yinf

        L, Q = _lmax(lmax, xorder), _qorder(qorder)
        _emit(_dump(_tagged(solve_yinf(f, L, Q), family="strip_stable", f=f, k="inf", Lmax=L, Omega=Q)), out)

    _run_safe(_impl)


@solve_app.command("h")
def solve_h_cmd(
    f: int = typer.Option(..., "--f"),
    lmax: Optional[int] = typer.Option(None, "--lmax"),
    xorder: Optional[int] = typer.Option(None, "--xorder"),
    qorder: Optional[int] = typer.Option(None, "--qorder"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """h (paths with backward steps) to the q-window."""

    def _impl():
        from core.path_oracle import FamilyKind
        from core.qdiff_solver import solve_h

        L, Q = _lmax(lmax, xorder), _qorder(qorder)
        _emit(_dump(_tagged(solve_h(f, L, Q), family=FamilyKind.BACKWARD.value, f=f, k="h", Lmax=L, Omega=Q)), out)

    _run_safe(_impl)


# =============================
# Knot
# =============================


@knot_app.command("homfly")
def knot_homfly(
    m: int = typer.Option(..., "--m"),
    n: int = typer.Option(..., "--n"),
    partition: str = typer.Option(..., "--partition", help="Comma-separated parts, e.g. 2,1."),
    qorder: Optional[int] = typer.Option(None, "--qorder", help="Window in sigma-bar = t^(-1/2m)."),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """Coloured HOMFLY-PT invariant of T(m, n)."""

    def _impl():
        from core.symmetric import Partition
        from core.torus_knot import homfly
        from core.utils_format import nut_to_json

        lam = Partition.parse(partition)
        h = homfly(lam, m, n, _qorder(qorder), _settings().size_cap)
        body = {"m": m, "n": n, "partition": list(lam.parts)}
        body.update(nut_to_json(h))
        _emit(_dump(body), out)

    _run_safe(_impl)


@knot_app.command("wave")
def knot_wave(
    m: int = typer.Option(..., "--m"),
    n: int = typer.Option(..., "--n"),
    kmax: int = typer.Option(..., "--kmax"),
    qorder: Optional[int] = typer.Option(None, "--qorder"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """One-row invariants H_(k), k = 0..kmax."""

    def _impl():
        from core.torus_knot import wave
        from core.utils_format import nut_to_json

        slots = wave(m, n, kmax, _qorder(qorder), _settings().size_cap)
        _emit(_dump([dict(k=k, **nut_to_json(h)) for k, h in enumerate(slots)]), out)

    _run_safe(_impl)


@knot_app.command("superpoly")
def knot_superpoly(
    f: int = typer.Option(..., "--f"),
    rmax: int = typer.Option(..., "--rmax"),
    qorder: Optional[int] = typer.Option(None, "--qorder"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """Generating series of the specialized superpolynomials of T(1, f)."""

    def _impl():
        from core.torus_knot import superpoly_series

        Q = _qorder(qorder)
        _emit(_dump(_tagged(superpoly_series(f, rmax, Q), family="superpoly", f=f, Rmax=rmax, Omega=Q)), out)

    _run_safe(_impl)


@knot_app.command("psi")
def knot_psi(
    f: int = typer.Option(..., "--f"),
    lmax: Optional[int] = typer.Option(None, "--lmax"),
    xorder: Optional[int] = typer.Option(None, "--xorder"),
    qorder: Optional[int] = typer.Option(None, "--qorder"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """Specialized wave function of T(1, f), both routes compared."""

    def _impl():
        from core.torus_knot import psi_substituted

        L, Q = _lmax(lmax, xorder), _qorder(qorder)
        _emit(_dump(_tagged(psi_substituted(f, L, Q, _settings().size_cap), family="psi", f=f, Lmax=L, Omega=Q)), out)

    _run_safe(_impl)


@knot_app.command("ytilde")
def knot_ytilde(
    f: int = typer.Option(..., "--f"),
    i: int = typer.Option(1, "--i"),
    lmax: Optional[int] = typer.Option(None, "--lmax"),
    xorder: Optional[int] = typer.Option(None, "--xorder"),
    qorder: Optional[int] = typer.Option(None, "--qorder"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """Ratio of shifted superpolynomial series."""

    def _impl():
        from core.torus_knot import ytilde

        L, Q = _lmax(lmax, xorder), _qorder(qorder)
        _emit(_dump(_tagged(ytilde(f, i, L, Q), family="ytilde", f=f, i=i, Lmax=L, Omega=Q)), out)

    _run_safe(_impl)


@knot_app.command("adams")
def knot_adams(
    partition: str = typer.Option(..., "--partition"),
    m: int = typer.Option(..., "--m"),
    out: Optional[Path] = typer.Option(None, "--out"),
) -> None:
    """Coefficients C^lam_{mu,m} of s_lam under p_k -> p_km."""

    def _impl():
        from core.symmetric import Partition, adams_coeffs

        lam = Partition.parse(partition)
        coeffs = adams_coeffs(lam, m, _settings().size_cap)
        rows = [{"mu": list(mu.parts), "c": c} for mu, c in sorted(coeffs.items(), reverse=True)]
        _emit(_dump({"partition": list(lam.parts), "m": m, "coefficients": rows}), out)

    _run_safe(_impl)


# =============================
# Verify
# =============================


def _specs_for(check: str, overrides: Dict[str, Any]) -> List["CheckSpec"]:
    from core.verification import CHECKS, CheckSpec, desk_profile

    accepted = set(inspect.signature(CHECKS[check]).parameters)
    given = {k: v for k, v in overrides.items() if k in accepted and v is not None}
    base = [s for s in desk_profile() if s.check == check] or [CheckSpec(check, {})]
    out: List[CheckSpec] = []
    seen = set()
    for spec in base:
        params = dict(spec.params)
        params.update(given)
        key = json.dumps(params, sort_keys=True)
        if key not in seen:
            seen.add(key)
            out.append(CheckSpec(check, params))
    return out


def _print_table(reports) -> None:
    from core.utils_format import fmt_discrepancy, fmt_ms

    table = Table(title="verification")
    table.add_column("check")
    table.add_column("params")
    table.add_column("status")
    table.add_column("time", justify="right")
    table.add_column("first discrepancy")
    for r in reports:
        status = "[green]pass[/green]" if r.passed else "[red]FAIL[/red]"
        params = ", ".join(f"{k}={v}" for k, v in r.params.items())
        table.add_row(r.check, params, status, fmt_ms(r.ms), fmt_discrepancy(r.discrepancy))
    console.print(table)


@app.command()
def verify(
    check: str = typer.Argument(..., help="Check id, or 'all' for a whole profile."),
    profile: str = typer.Option("desk", "--profile"),
    m: Optional[int] = typer.Option(None, "--m"),
    n: Optional[int] = typer.Option(None, "--n"),
    f: Optional[int] = typer.Option(None, "--f"),
    lmax: Optional[int] = typer.Option(None, "--lmax"),
    xorder: Optional[int] = typer.Option(None, "--xorder"),
    kmax: Optional[int] = typer.Option(None, "--kmax"),
    rmax: Optional[int] = typer.Option(None, "--rmax"),
    jmax: Optional[int] = typer.Option(None, "--jmax"),
    qorder: Optional[int] = typer.Option(None, "--qorder"),
    out: Optional[Path] = typer.Option(None, "--out", help="Report directory."),
) -> None:
    """Run identity checks; exit 0 iff every report passes."""

    def _impl() -> int:
        from core.verification import CHECK_IDS, PROFILES, run_checks, write_reports

        if check == "all":
            if profile not in PROFILES:
                raise typer.BadParameter(f"unknown profile {profile!r}")
            specs = PROFILES[profile]()
        elif check in CHECK_IDS:
            L = xorder - 1 if (lmax is None and xorder is not None) else lmax
            overrides = dict(m=m, n=n, f=f, lmax=L, kmax=kmax, rmax=rmax, jmax=jmax, qorder=qorder)
            specs = _specs_for(check, overrides)
        else:
            raise typer.BadParameter(f"unknown check {check!r}; choose one of: all, {', '.join(CHECK_IDS)}")
        reports = run_checks(specs, _settings().threads)
        write_reports(reports, out or Path(_settings().report_dir))
        _print_table(reports)
        return 0 if all(r.passed for r in reports) else 1

    _run_safe(_impl)


def main():
    app(prog_name="schroder")


if __name__ == "__main__":
    main()
