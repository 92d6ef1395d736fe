import json

import pytest

import core.verification as verification
from core.errors import GridViolation
from core.graded import NuTSeries
from core.qseries import QWindowSeries
from core.report_verification import build_verification_summary_md
from core.torus_knot import off_grid_monomial
from core.verification import (
    CHECK_IDS,
    CHECKS,
    CheckSpec,
    VerificationReport,
    check_adams_identity,
    check_base_case,
    check_grid,
    check_jt_oracle,
    check_oracle,
    check_pbar,
    check_prop12,
    check_prop13,
    check_y_family,
    check_totals,
    check_yinf,
    desk_profile,
    params_slug,
    run_check,
    run_checks,
    write_reports,
)


def test_every_check_is_registered_and_profiled():
    assert set(CHECKS) == set(CHECK_IDS)
    assert {s.check for s in desk_profile()} == set(CHECK_IDS)


def test_params_slug():
    assert params_slug({"m": 2, "n": 3, "partitions": "1;2"}) == "m2-n3-partitions1+2"
    assert params_slug({}) == "default"


def test_totals_check():
    assert check_totals(4) is None


def test_oracle_check():
    assert check_oracle(2, 3, 3) is None


def test_base_case_check():
    assert check_base_case(1, 2, 3) is None


def test_strip_family_check():
    assert check_y_family(2, 3) is None


def test_yinf_check():
    assert check_yinf(1, 3, 24) is None


def test_wave_function_equals_h():
    assert check_prop12(1, 4, 24) is None


@pytest.mark.slow
def test_superpolynomial_ratios():
    assert check_prop13(2, 4, 40) is None


def test_adams_checks():
    assert check_adams_identity(3) is None
    assert check_jt_oracle(2, 2) is None


def test_grid_and_pbar_checks():
    assert check_grid(2, 3, 16) is None
    assert check_pbar(2, 4, 30) is None


def test_run_check_turns_errors_into_failures():
    report = run_check(CheckSpec("grid", {"m": 2, "n": 2, "qorder": 8}))
    assert report.status == "fail"
    assert not report.passed
    assert report.discrepancy["error"].startswith("InvalidSlope")


def test_run_checks_keeps_order():
    specs = [
        CheckSpec("adams", {"max_size": 2}),
        CheckSpec("totals", {"lmax": 3}),
        CheckSpec("base_case", {"m": 1, "n": 1, "lmax": 2}),
    ]
    reports = run_checks(specs, threads=3)
    assert [r.check for r in reports] == ["adams", "totals", "base_case"]
    assert all(r.passed for r in reports)
    assert all(r.discrepancy is None for r in reports)


def test_write_reports(tmp_path):
    reports = [
        VerificationReport(check="totals", params={"lmax": 4}, status="pass", ms=1.5),
        VerificationReport(
            check="oracle",
            params={"m": 2, "n": 3, "lmax": 3},
            status="fail",
            discrepancy={"x": 2, "a": 0, "q": 4, "expected": "1", "got": "2", "s": 1},
            ms=10.0,
        ),
    ]
    written = write_reports(reports, tmp_path)
    assert (tmp_path / "totals__lmax4.json") in written
    body = json.loads((tmp_path / "oracle__m2-n3-lmax3.json").read_text())
    assert set(body) == {"check", "params", "status", "discrepancy", "ms"}
    assert body["status"] == "fail"
    combined = json.loads((tmp_path / "reports.json").read_text())
    assert [r["check"] for r in combined] == ["totals", "oracle"]
    summary = (tmp_path / "summary.md").read_text()
    assert summary.startswith("# Verification summary")
    assert "**Failed:** 1" in summary


def test_summary_without_failures():
    md = build_verification_summary_md([VerificationReport(check="adams", params={}, status="pass")])
    assert "## adams: Adams coefficients at m = 1" in md
    assert "Failures" not in md


def test_base_case_failure_names_the_monomial(monkeypatch):
    monkeypatch.setattr(verification, "base_case_entries", lambda m, n, l: {(0, l * l): 1})
    assert check_base_case(1, 1, 1) == {"s": 0, "x": 1, "a": 2, "q": 0, "expected": "0", "got": "1"}


def test_adams_failure_names_the_schur_term(monkeypatch):
    monkeypatch.setattr(verification, "adams_coeffs", lambda lam, m, size_cap: {lam: 2})
    assert check_adams_identity(1) == {"mu": "()", "expected": "1", "got": "2", "partition": "()"}


def test_grid_failure_names_the_monomial(monkeypatch):
    off = NuTSeries({1: QWindowSeries.from_dict({1: 1, 2: 3})}, 6, grid=4)

    def fake_homfly(lam, m, n, window):
        raise GridViolation("off grid", locator=off_grid_monomial(off, 2))

    monkeypatch.setattr(verification, "homfly", fake_homfly)
    assert check_grid(2, 3, 16, partitions="1") == {"a": 1, "q": -1, "expected": "0", "got": "1", "partition": "1"}


def test_grid_violation_without_locator_propagates(monkeypatch):
    def fake_homfly(lam, m, n, window):
        raise GridViolation("mixed grids")

    monkeypatch.setattr(verification, "homfly", fake_homfly)
    with pytest.raises(GridViolation):
        check_grid(2, 3, 16, partitions="1")


def test_jt_oracle_failure_names_the_schur_term(monkeypatch):
    monkeypatch.setattr(verification, "adams_coeffs_oracle", lambda lam, m: {})
    assert check_jt_oracle(1, 1) == {"mu": "(1)", "expected": "0", "got": "1", "partition": "(1)", "m": 1}
