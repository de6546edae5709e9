"""Pipeline orchestration, corpus format, CLI exit codes, determinism."""

import json
import subprocess
import sys

import pytest

from planepencil.config import ToolkitConfig
from planepencil.core.errors import HypothesisNotCertified, NoApplicableMaps, ParseError
from planepencil.corpus import parse_corpus, standard_corpus
from planepencil.harness import euler_bookkeeping, run_corpus, run_map, theorem2_harness
from planepencil.pencil import PencilMap, scan_pencil
from planepencil.report import emit
from planepencil.resolution import resolve_pencil

from conftest import P


def run(name, p, q, config, expected=None):
    return run_map(name, p, q, config, expected=expected)


def test_triangular_full_pipeline(config):
    r = run("triangular", "x", "y + x^2", config)
    assert r.theorem2["applicable"]
    assert r.theorem2["equivalent"] == "pass"
    assert r.theorem2["a_regular_value"] and r.theorem2["b_keller"]
    assert r.checks["eq4"].details == {"lhs": 0, "rhs": 0, "mode": "=="}
    assert r.checks["eq8"].status == "pass"
    assert r.tree.situation == "ii"


def test_counterexample_pipeline_skips(config):
    r = run("counterexample", "x", "x^2 + y^3", config)
    assert not r.theorem2["applicable"]
    assert r.theorem2["equivalent"] == "skip"
    assert "rationality" in r.theorem2["reason"] or "not_rational" in r.theorem2["reason"]
    assert r.checks["eq4"].status == "skip"
    assert r.checks["eq5"].status == "skip"
    # predicate table consistently all false
    assert r.theorem2["a_regular_value"] is False
    assert r.theorem2["b_keller"] is False
    assert r.theorem2["c_invertible"] is False


def test_product_sum_eq4(config):
    r = run("product-sum", "x*y", "x + y", config)
    assert r.checks["eq4"].status == "pass"
    assert r.checks["eq4"].details == {"lhs": 1, "rhs": 1, "mode": "=="}
    assert not r.theorem2["applicable"]


def test_suzuki_identity_values(config):
    r = run("triangular", "x", "y + x^2", config)
    assert r.checks["eq5"].status == "pass"
    assert r.checks["eq5"].details["lhs"] == r.checks["eq5"].details["rhs"] == 3
    r2 = run("double-line", "x", "y^2", config)
    assert r2.checks["eq5"].status == "pass"
    assert r2.checks["eq5"].details["lhs"] == r2.checks["eq5"].details["rhs"] == 3
    r3 = run("product-sum", "x*y", "x + y", config)
    assert r3.checks["eq5"].details["lhs"] == r3.checks["eq5"].details["rhs"] == 3


def test_euler_bookkeeping_refuses_nonrational(config):
    F = PencilMap(P("x"), P("x^2+y^3"), "cx")
    profile = scan_pencil(F, config.n_samples, config.seed, config.degree_cap)
    tree = resolve_pencil(F, config)
    with pytest.raises(HypothesisNotCertified):
        euler_bookkeeping(tree, profile)


def test_cross_oracle_jelonek(config):
    r = run("jelonek-line", "x", "x*y^2 - y", config)
    assert r.checks["af_cross"].status == "pass"
    assert r.checks["af_cross"].details["elimination"] == ["u"]
    assert r.checks["af_cross"].details["resolution"] == ["u"]
    assert r.checks["theorem4"].status == "pass"
    verdicts = r.checks["theorem4"].details["verdicts"]
    assert verdicts[0]["is_line_through_origin"]
    assert verdicts[0]["ratio_ok"] is False  # degrees 0/1 vs degrees 1/3
    assert r.preds.keller is False


def test_theorem2_harness_suite(config):
    autos = [
        run("identity", "x", "y", config),
        run("triangular", "x", "y + x^2", config),
        run("swap", "y", "x", config),
        run("shear", "x + y^3", "y", config),
    ]
    suite = theorem2_harness(autos)
    assert suite["status"] == "pass"
    assert len(suite["applicable"]) == 4
    others = [
        run("double-line", "x", "y^2", config),
        run("counterexample", "x", "x^2 + y^3", config),
    ]
    suite2 = theorem2_harness(others)
    assert suite2["status"] == "skip"
    assert suite2["reason"] == "no applicable maps"
    assert theorem2_harness([])["status"] == "skip"


def test_expected_golden_values(config):
    r = run("identity", "x", "y", config, expected={"deg_geo": 2})
    assert r.expected_failures
    r2 = run("identity", "x", "y", config, expected={"deg_geo": 1, "invertible": True})
    assert not r2.expected_failures


def test_corpus_parsing_roundtrip():
    text = """
# comment
[[map]]
name = "a"
P = "x"
Q = "y"
tags = ["one", "two"]
expected_deg_geo = 1
expected_invertible = true

[[map]]
name = "b"
P = "x"
Q = "y^2"
"""
    entries = parse_corpus(text)
    assert len(entries) == 2
    assert entries[0]["tags"] == ["one", "two"]
    assert entries[0]["expected"] == {"deg_geo": 1, "invertible": True}
    with pytest.raises(ParseError):
        parse_corpus("[[map]]\nname = \"a\"\nP = \"x\"\n")  # missing Q
    with pytest.raises(ParseError):
        parse_corpus(text + "\n[[map]]\nname = \"a\"\nP = \"x\"\nQ = \"y\"\n")


def test_standard_corpus_shape():
    entries = standard_corpus()
    assert len(entries) == 12
    names = [e["name"] for e in entries]
    assert "counterexample" in names and "cap-stress" in names
    tags = {t for e in entries for t in e.get("tags", [])}
    assert {"automorphism", "non-proper", "degenerate", "cap-stress"} <= tags


def _cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "planepencil.cli", *args],
        capture_output=True,
        text=True,
    )
    return proc


def test_cli_analyze_automorphism():
    proc = _cli("analyze", "P=x", "Q=y+x^2")
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert data["invertible"] is True
    assert data["theorem2"]["equivalent"] == "pass"


def test_cli_verify_counterexample_skips_are_not_failures():
    proc = _cli("verify", "P=x", "Q=x^2+y^3")
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert data["checks"]["eq4"]["status"] == "skip"


def test_cli_missing_corpus_is_usage_error(tmp_path):
    proc = _cli("corpus", str(tmp_path / "missing.toml"))
    assert proc.returncode == 2


def test_cli_malformed_polynomial_reports_position():
    proc = _cli("analyze", "P=x +* y", "Q=y")
    assert proc.returncode == 2
    assert "column" in proc.stderr


def test_cli_cap_stress_exit_code():
    proc = _cli("analyze", "P=x^3+y", "Q=y^3+x+1")
    assert proc.returncode == 3
    assert "t^9 - t - 1" in proc.stdout


def test_cli_resolve_dot_output(tmp_path):
    dot = tmp_path / "g.dot"
    proc = _cli("resolve", "P=x*y", "Q=x+y", "--dot", str(dot))
    assert proc.returncode == 0
    text = dot.read_text()
    assert text.startswith("graph resolution {")
    assert '"Linf"' in text


def test_corpus_run_parallel_matches_serial(config):
    entries = standard_corpus()[:4]
    serial = run_corpus(entries, config, jobs=1)
    parallel = run_corpus(entries, config, jobs=2)
    assert emit(serial)[0] == emit(parallel)[0]


def test_report_emission_deterministic(config):
    entries = standard_corpus()[:3]
    a = emit(run_corpus(entries, config))
    b = emit(run_corpus(entries, config))
    assert a == b
    assert a[0].rstrip().endswith("}")
    assert "theorem-2 suite" in a[1]
