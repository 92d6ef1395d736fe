import csv
import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from core.app_main import APP_VERSION, app

runner = CliRunner()


def invoke(*args):
    return runner.invoke(app, [str(a) for a in args])


def test_version():
    result = invoke("--version")
    assert result.exit_code == 0
    assert APP_VERSION in result.output


def test_version_matches_version_file():
    assert (Path(__file__).resolve().parents[1] / "VERSION.txt").read_text().strip() == APP_VERSION


def test_solve_slope_totals(tmp_path):
    out = tmp_path / "slope.json"
    result = invoke("solve", "slope", "--m", 1, "--n", 1, "--lmax", 4, "--out", out)
    assert result.exit_code == 0, result.output
    docs = json.loads(out.read_text())
    assert [d["s"] for d in docs] == [0, 1]
    y0 = docs[0]
    assert y0["family"] == "slope"
    assert y0["Lmax"] == 4
    totals = [sum(int(t["c"]) for t in row["terms"]) for row in y0["coeffs"]]
    assert totals == [1, 2, 6, 22, 90]


def test_enumerate_strip_csv(tmp_path):
    out = tmp_path / "strip.csv"
    result = invoke("enumerate", "strip", "--f", 2, "--k", 5, "--lmax", 2, "--out", out)
    assert result.exit_code == 0, result.output
    rows = list(csv.DictReader(out.open()))
    assert rows[0]["family"] == "strip"
    assert any(r["d"] == "2" and r["A"] == "10" and r["l"] == "2" for r in rows)


def test_enumerate_rejects_non_coprime_slope():
    assert invoke("enumerate", "slope", "--m", 2, "--n", 2, "--lmax", 2).exit_code == 2


def test_enumerate_rejects_unknown_format():
    assert invoke("enumerate", "slope", "--m", 1, "--n", 1, "--lmax", 2, "--format", "xml").exit_code == 2


def test_solve_h_with_xorder(tmp_path):
    out = tmp_path / "h.json"
    result = invoke("solve", "h", "--f", 1, "--xorder", 3, "--qorder", 12, "--out", out)
    assert result.exit_code == 0, result.output
    doc = json.loads(out.read_text())
    assert doc["x_order"] == 3
    assert doc["q_window"] == 12
    assert doc["family"] == "backward"
    assert all(int(t["c"]) >= 0 for row in doc["coeffs"] for t in row["terms"])


def test_knot_superpoly(tmp_path):
    out = tmp_path / "p.json"
    result = invoke("knot", "superpoly", "--f", 2, "--rmax", 5, "--qorder", 32, "--out", out)
    assert result.exit_code == 0, result.output
    doc = json.loads(out.read_text())
    assert doc["coeffs"][0]["terms"] == [{"a": 0, "q": 0, "c": "1"}]


def test_knot_homfly(tmp_path):
    out = tmp_path / "h.json"
    result = invoke("knot", "homfly", "--m", 1, "--n", 3, "--partition", "2", "--qorder", 12, "--out", out)
    assert result.exit_code == 0, result.output
    doc = json.loads(out.read_text())
    assert doc["grid"] == 2
    assert doc["partition"] == [2]
    assert doc["terms"]


def test_knot_adams(tmp_path):
    out = tmp_path / "c.json"
    result = invoke("knot", "adams", "--partition", "1", "--m", 2, "--out", out)
    assert result.exit_code == 0, result.output
    doc = json.loads(out.read_text())
    assert doc["coefficients"] == [{"mu": [2], "c": 1}, {"mu": [1, 1], "c": -1}]


def test_verify_single_check(tmp_path):
    result = invoke("verify", "oracle", "--m", 1, "--n", 2, "--lmax", 2, "--out", tmp_path)
    assert result.exit_code == 0, result.output
    report = json.loads((tmp_path / "oracle__m1-n2-lmax2.json").read_text())
    assert report["status"] == "pass"
    assert report["discrepancy"] is None
    assert (tmp_path / "summary.md").exists()


def test_verify_failure_exit_code(tmp_path):
    result = invoke("verify", "grid", "--m", 2, "--n", 2, "--qorder", 8, "--out", tmp_path)
    assert result.exit_code == 1


def test_verify_unknown_check(tmp_path):
    assert invoke("verify", "nosuch", "--out", tmp_path).exit_code == 2


@pytest.mark.slow
def test_verify_desk_profile(tmp_path):
    result = invoke("verify", "all", "--profile", "desk", "--out", tmp_path)
    assert result.exit_code == 0, result.output
    combined = json.loads((tmp_path / "reports.json").read_text())
    assert all(r["status"] == "pass" for r in combined)
