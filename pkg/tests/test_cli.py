import csv
import io
import json
import math
import subprocess
import sys
import threading

import pytest

from robin_ball.ball_spectrum import BallProblem, branch_eigenvalue
from robin_ball.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def records(*argv):
    code, text = run(*argv)
    assert code == 0, text
    return json.loads(text)


def test_eigen_examples():
    doc = records("eigen", "--dim", "2", "--alpha", "1", "--l", "0", "--m", "1")
    assert doc["schema_version"] == 1
    assert doc["problem"] == {"kind": "ball", "dim": 2, "alpha": 1.0}
    rec = doc["records"][0]
    assert set(rec) >= {"l", "m", "k", "mu", "sign_class", "multiplicity", "residual"}
    assert rec["k"] == pytest.approx(1.25578, abs=5e-6)
    assert records("eigen", "--dim", "2", "--alpha", "0", "--l", "0", "--m", "1")["records"][0]["mu"] == 0.0
    rec = records("eigen", "--dim", "3", "--alpha", "-0.5", "--l", "0", "--m", "1")["records"][0]
    assert rec["mu"] == pytest.approx(-(1.28784**2), abs=2e-5)
    assert rec["sign_class"] == "negative"


def test_json_round_trip_is_exact():
    rec = records("eigen", "--dim", "4", "--alpha", "0.37", "--l", "2", "--m", "3")["records"][0]
    mem = branch_eigenvalue(BallProblem(4, 0.37), 2, 3).to_dict()
    for key, value in mem.items():
        assert rec[key] == value


def test_positive_branch_refused_below_threshold():
    code, _ = run("eigen", "--dim", "2", "--alpha", "-1.5", "--l", "1", "--m", "1", "--branch", "positive")
    assert code == 2
    code, _ = run("eigen", "--dim", "2", "--alpha", "-0.5", "--l", "0", "--m", "2", "--branch", "negative")
    assert code == 2


def test_usage_errors():
    assert run("spectrum", "--dim", "2", "--alpha", "1")[0] == 2
    assert run("spectrum", "--dim", "2", "--alpha", "1", "--cutoff", "5", "--count", "2")[0] == 2
    assert run("eigen", "--dim", "1", "--alpha", "1", "--l", "0", "--m", "1")[0] == 2
    assert run("eigen", "--dim", "2", "--alpha", "1", "--l", "0", "--m", "0")[0] == 2
    assert run("verify", "--dim", "2", "--alpha", "1", "--cutoff", "5", "--grids", "a,b")[0] == 2
    assert run("eigenfunction", "--dim", "2", "--alpha", "1", "--m", "1", "--samples", "1")[0] == 2
    assert run("bogus")[0] == 2


def test_spectrum_count_and_cutoff():
    recs = records("spectrum", "--dim", "2", "--alpha", "1", "--count", "3")["records"]
    assert [r["n"] for r in recs] == [1, 2, 3]
    assert recs[0]["k"] == pytest.approx(1.25578, abs=5e-6)
    assert recs[1]["mu"] == recs[2]["mu"] and recs[1]["l"] == 1 and recs[1]["multiplicity"] == 2
    recs = records("spectrum", "--dim", "2", "--alpha", "-2", "--cutoff", "0")["records"]
    assert [r["sign_class"] for r in recs] == ["negative", "negative", "zero"]
    assert recs[-1]["mu"] == 0.0


def test_interval_forms_agree():
    a = records("spectrum", "--interval", "--alpha", "-3", "--count", "2")
    b = records("interval", "--alpha", "-3", "--count", "2")
    assert a == b
    assert [r["mu"] for r in a["records"]] == pytest.approx([-10.52118, -6.63412], abs=5e-6)
    assert a["problem"] == {"kind": "interval", "alpha": -3.0}
    recs = records("interval", "--alpha", "0", "--cutoff", "50")["records"]
    assert len(recs) == 3


def test_csv_output_and_digits():
    code, text = run("spectrum", "--dim", "2", "--alpha", "1", "--count", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["n", "l", "m", "mu", "k", "sign_class", "multiplicity", "order"]
    assert rows[1][4] == "1.25578"
    _, text = run("spectrum", "--dim", "2", "--alpha", "1", "--count", "1", "--format", "csv", "--digits", "9")
    assert list(csv.reader(io.StringIO(text)))[1][4].count(".") == 1
    assert len(list(csv.reader(io.StringIO(text)))[1][4].split(".")[1]) == 9


def test_json_numbers_carry_full_precision():
    rec = records("eigen", "--dim", "3", "--alpha", "2", "--l", "1", "--m", "1")["records"][0]
    assert rec["k"] == pytest.approx(math.pi, abs=1e-10)
    assert len(repr(rec["k"]).replace("0.", "").lstrip("0")) >= 11


def test_tables_csv_and_byte_identical():
    code, text = run("table1", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0][:4] == ["quantity", "dim", "nu", "l"] and len(rows[0]) == 11
    assert len(rows) == 7
    cell = {(r[0], r[1], r[3]): r[4:] for r in rows[1:]}
    assert cell["k", "3", "1"][4] == "3.72638"
    assert cell["ratio", "3", ""][5] == "2.04575"
    _, text2 = run("table2", "--format", "csv")
    cell2 = {(r[0], r[1], r[3]): r[4:] for r in list(csv.reader(io.StringIO(text2)))[1:]}
    assert cell2["ratio", "2", ""][0] == "-15.12204"

    outputs = []

    def work():
        outputs.append(run("table1", "--format", "csv")[1] + run("table2", "--format", "csv")[1])

    threads = [threading.Thread(target=work) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(o == text + text2 for o in outputs)
    assert records("table2")["problem"]["kind"] == "table2"


def test_verify_exit_codes():
    code, text = run("verify", "--dim", "2", "--alpha", "1", "--cutoff", "40", "--grids", "512,1024,2048")
    assert code == 0 and text.strip().endswith("PASS")
    assert run("verify", "--interval", "--alpha", "0", "--grids", "1024")[0] == 0
    assert run("verify", "--dim", "3", "--alpha", "-0.9", "--cutoff", "5", "--grids", "2048")[0] == 0
    doc = records("verify", "--dim", "2", "--alpha", "1", "--cutoff", "10", "--grids", "256", "--json")
    assert doc["records"][0]["passed"] is True


def test_verify_mismatch_exits_1(monkeypatch):
    import robin_ball.cli as cli
    from robin_ball.oracle import OracleReport

    def fake(problem, cutoff, grids):
        return OracleReport([(0, 1)], [1.0], [1.5], [0.5], list(grids), guardrails=[1e-6], problems=["(l=0, m=1): off"])

    monkeypatch.setattr(cli, "verify_spectrum", fake)
    code, text = run("verify", "--dim", "2", "--alpha", "1", "--cutoff", "5", "--grids", "64")
    assert code == 1 and "MISMATCH" in text and text.strip().endswith("FAIL")


def _profile(*argv):
    code, text = run("eigenfunction", *argv)
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    return [(float(a), float(b)) for a, b in rows[1:]]


def test_eigenfunction_examples():
    pts = _profile("--dim", "3", "--alpha", "1", "--l", "0", "--m", "1", "--samples", "11")
    assert pts[0][0] == 0.0 and pts[-1][0] == 1.0
    ref = [math.sin(math.pi * r / 2) / r if r else math.pi / 2 for r, _ in pts]
    scale = pts[5][1] / ref[5]
    for (r, v), x in zip(pts, ref):
        assert v == pytest.approx(scale * x, rel=1e-9)
    pts = _profile("--dim", "2", "--alpha", "-1", "--l", "1", "--m", "1", "--samples", "11")
    for r, v in pts:
        assert v == pytest.approx(r * pts[-1][1], rel=1e-9, abs=1e-300)
    pts = _profile("--dim", "2", "--alpha", "1", "--l", "0", "--m", "3", "--samples", "201")
    v = [b for _, b in pts]
    assert sum(1 for a, b in zip(v, v[1:]) if a * b < 0) == 2
    pts = _profile("--interval", "--alpha", "-2", "--m", "2", "--samples", "3")
    assert [b for _, b in pts] == pytest.approx([1.0, 0.0, -1.0], abs=1e-15)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "robin_ball", "eigen", "--dim", "2", "--alpha", "1", "--l", "0", "--m", "1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["records"][0]["l"] == 0
