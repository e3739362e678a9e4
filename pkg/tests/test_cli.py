"""Command line front end: flag plumbing, output formats, exit codes."""
import json
import pathlib
import subprocess
import sys
from fractions import Fraction

import pytest

from mirrorforge import cli
from mirrorforge.exactnum import LambdaLaurent
from mirrorforge.frob import lam, xi
from mirrorforge.report import Report

ORACLES = json.loads(
    (pathlib.Path(__file__).parent / "oracles" / "recorded.json").read_text()
)


def run(argv, capsys):
    code = cli.main(argv)
    return code, capsys.readouterr().out


def csv_rows(text):
    rows = {}
    for line in text.strip().splitlines()[1:]:
        k, c = line.split(",")
        rows[int(k)] = Fraction(c)
    return rows


# --- compute --------------------------------------------------------------


def test_compute_tau_csv(capsys):
    code, out = run(["compute", "tau", "--order", "6", "--format", "csv"], capsys)
    assert code == 0
    assert csv_rows(out) == {1: Fraction(1), 6: Fraction(13, 1125000)}


def test_compute_i0_low_order_is_constant_one(capsys):
    code, out = run(["compute", "i0", "--order", "4"], capsys)
    assert code == 0
    body = out.strip().splitlines()
    assert body[1:] == ["t^0\t1"]


def test_compute_f1_fjrw_json(capsys):
    code, out = run(
        ["compute", "f1", "--theory", "fjrw", "--order", "10", "--format", "json"],
        capsys,
    )
    assert code == 0
    obj = json.loads(out)
    coeffs = obj["series"]["coeffs"]
    nonzero = {k: f"{c['n']}/{c['d']}" for k, c in enumerate(coeffs) if c["n"] != "0"}
    assert nonzero == {
        5: ORACLES["f1_fjrw_t5"],
        10: ORACLES["f1_fjrw_t10"],
    }


def test_compute_f1_lambda_alias_is_twisted(capsys):
    code, out = run(
        ["compute", "f1", "--theory", "lambda", "--order", "5", "--format", "csv"],
        capsys,
    )
    assert code == 0
    assert csv_rows(out) == {5: Fraction(ORACLES["f1_twisted_t5"])}


def test_compute_f1_both_is_json_only(capsys):
    code, out = run(
        ["compute", "f1", "--theory", "both", "--order", "6", "--format", "json"],
        capsys,
    )
    assert code == 0
    obj = json.loads(out)
    assert set(obj) == {"target", "order", "twisted", "fjrw"}
    code, _ = run(["compute", "tau", "--theory", "both"], capsys)
    assert code == 2


def test_compute_structured_targets_reject_csv(capsys):
    code, _ = run(["compute", "delta", "--format", "csv"], capsys)
    assert code == 2
    code, _ = run(["compute", "r1", "--order", "6", "--format", "json"], capsys)
    assert code == 0


def test_compute_f_and_g_leading_terms(capsys):
    _, out_f = run(["compute", "f", "--order", "5", "--format", "csv"], capsys)
    _, out_g = run(["compute", "g", "--order", "5", "--format", "csv"], capsys)
    assert csv_rows(out_f)[5] == Fraction(1, 9375)
    assert csv_rows(out_g)[5] == Fraction(-1, 15000)


def test_compute_out_writes_file(tmp_path, capsys):
    path = tmp_path / "L.csv"
    code, out = run(
        ["compute", "L", "--order", "8", "--format", "csv", "--out", str(path)],
        capsys,
    )
    assert code == 0 and out == ""
    assert csv_rows(path.read_text()) == {0: Fraction(1), 5: Fraction(1, 15625)}


# --- verify ---------------------------------------------------------------


def test_verify_unknown_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["verify", "bogus"])
    assert e.value.code == 2
    capsys.readouterr()


def test_verify_report_schema(capsys):
    code, out = run(
        ["verify", "tails", "ipp", "--order", "8", "--format", "json"], capsys
    )
    assert code == 0
    reports = json.loads(out)
    assert [r["suite"] for r in reports] == ["tails", "ipp"]
    for r in reports:
        assert r["status"] == "pass"
        assert r["first_failure"] is None
        assert isinstance(r["elapsed_ms"], int)


def test_verify_residues_json_per_degree(capsys):
    code, out = run(
        [
            "verify",
            "residues",
            "--dmax",
            "1",
            "--theory",
            "w",
            "--format",
            "json",
        ],
        capsys,
    )
    assert code == 0
    detail = json.loads(out)[0]["detail"]
    assert len(detail) == 1
    d = detail[0]
    assert d["star"] == "w"
    assert d["heart_constant"] == "-625"
    assert d["diamond_constant"] == "1"
    assert [(p["degree"], p["status"]) for p in d["per_degree"]] == [
        ("1/5", "PASS"),
        ("2/5", "PASS"),
        ("3/5", "PASS"),
        ("4/5", "PASS"),
        ("1", "PASS"),
    ]


def test_verify_failure_exits_one(monkeypatch, capsys):
    bad = Report("ipp")
    bad.fail("synthetic", 3, 1, 2)
    monkeypatch.setitem(cli.SUITES, "ipp", lambda cfg: (bad, None))
    code, out = run(["verify", "ipp", "--format", "json"], capsys)
    assert code == 1
    rep = json.loads(out)[0]
    assert rep["status"] == "fail"
    assert rep["first_failure"]["where"] == "synthetic"


def test_verify_rejects_low_order(capsys):
    code, _ = run(["verify", "ipp", "--order", "5"], capsys)
    assert code == 2


def test_verify_jobs_agree_with_serial(capsys):
    argv = ["verify", "pf", "tails", "--order", "8", "--format", "csv"]
    _, serial = run(argv + ["--jobs", "1"], capsys)
    _, parallel = run(argv + ["--jobs", "3"], capsys)
    strip = lambda text: [r.rsplit(",", 1)[0] for r in text.splitlines()]
    assert strip(serial) == strip(parallel)


# --- dump -----------------------------------------------------------------


def test_dump_graphs(capsys):
    code, out = run(["dump", "graphs", "--g", "1", "--n", "1"], capsys)
    assert code == 0
    graphs = json.loads(out)["graphs"]
    assert sorted(g["aut"] for g in graphs) == [1, 2]
    code, out = run(["dump", "graphs", "--g", "0", "--n", "4"], capsys)
    assert len(json.loads(out)["graphs"]) == 4


def test_dump_graphs_usage_errors(capsys):
    code, _ = run(["dump", "graphs", "--g", "2", "--n", "1"], capsys)
    assert code == 2
    code, _ = run(["dump", "graphs", "--n", "1"], capsys)
    assert code == 2


def test_dump_rmatrix_order_zero_is_zero_matrix(capsys):
    code, out = run(["dump", "rmatrix", "--order", "0"], capsys)
    assert code == 0
    obj = json.loads(out)
    for row in obj["R1"]:
        for entry in row:
            assert all(c == [] for c in entry["coeffs"])


def test_dump_frame_delta_constants(capsys):
    code, out = run(["dump", "frame", "--order", "5"], capsys)
    assert code == 0
    delta = json.loads(out)["delta"]
    assert len(delta) == 5
    for a, d in enumerate(delta):
        const = LambdaLaurent.from_json(d["coeffs"][0])
        assert const == lam(6) * xi(3 * a)


# --- demo and environment -------------------------------------------------


def test_cohft_demo_shapes(capsys):
    code, out = run(["cohft-demo", "--order", "6"], capsys)
    assert code == 0
    blocks = json.loads(out)["correlators"]
    assert [(b["g"], b["n"], len(b["graphs"])) for b in blocks] == [
        (0, 3, 1),
        (0, 4, 4),
        (1, 1, 2),
    ]
    vertex = blocks[2]["graphs"][0]["contribution"]["coeffs"][0]
    assert vertex == [
        {
            "halfexp": 0,
            "c": [
                {"n": "5", "d": "24"},
                {"n": "0", "d": "1"},
                {"n": "0", "d": "1"},
                {"n": "0", "d": "1"},
            ],
        }
    ]


def test_env_var_sets_default_order(monkeypatch, capsys):
    monkeypatch.setenv("MIRRORFORGE_ORDER", "8")
    code, out = run(["compute", "tau", "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["order"] == 8
    monkeypatch.setenv("MIRRORFORGE_ORDER", "3")
    code, _ = run(["compute", "tau", "--format", "json"], capsys)
    assert code == 2
    monkeypatch.setenv("MIRRORFORGE_ORDER", "soon")
    code, _ = run(["compute", "tau", "--format", "json"], capsys)
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mirrorforge.cli", "verify", "tails", "--order", "7"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("tails: PASS")
