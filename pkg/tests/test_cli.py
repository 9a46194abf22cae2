import io
import json
import subprocess
import sys

import pytest

from ramanujan_rg import cli
from ramanujan_rg.report import CSV_COLUMNS, VerificationReport

from conftest import FIXTURES


def run(argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def strip_timings(records):
    for r in records:
        r.pop("timings", None)
        r.pop("ms", None)
    return records


# verify -------------------------------------------------------------------------

def test_verify_petersen_json():
    code, out, _ = run(["verify", "--gen", "petersen", "--format", "json"])
    (rep,) = json_lines(out)
    assert code == 0 and rep["status"] == "pass"
    assert (rep["m_R"], rep["d"], rep["measured_order"], rep["measured_degree"]) == (75, 56, 75, 56)
    assert rep["measured_lambda_star"] == pytest.approx(10) and rep["predicted_lambda_star"] == "10"
    assert rep["bound"] == pytest.approx(14.8324, abs=1e-4)
    assert rep["diameter"] <= 3 and rep["is_connected"] and rep["is_ramanujan"]
    assert all(v in ("confirmed", "agree", "n/a") for v in rep["claim_flags"].values())


def test_verify_cycle5_exception_flags():
    code, out, _ = run(["verify", "--gen", "cycle:5"])
    assert code == 0 and "cycle:5: PASS" in out
    assert "lambda2: not confirmed (known C5 exception)" in out
    assert "lambda_min: not confirmed (known C5 exception)" in out
    code, out, _ = run(["verify", "--gen", "cycle:5", "--format", "json"])
    (rep,) = json_lines(out)
    assert rep["measured_lambda2"] == pytest.approx(0.6180, abs=1e-4)
    assert rep["measured_lambda_min"] == pytest.approx(-1.6180, abs=1e-4)


def test_verify_skipped_hypothesis():
    code, out, _ = run(["verify", "--gen", "complete:4"])
    assert code == 0 and out.strip() == "complete:4: SKIPPED (n < 5 hypothesis violated)"


def test_verify_size_cap_flag_and_env(monkeypatch):
    code, out, _ = run(["verify", "--gen", "petersen", "--cap", "50"])
    assert code == 0 and "SKIPPED (size cap exceeded" in out
    monkeypatch.setenv(cli.CAP_ENV, "50")
    assert "SKIPPED" in run(["verify", "--gen", "petersen"])[1]
    assert "PASS" in run(["verify", "--gen", "petersen", "--cap", "100"])[1]
    monkeypatch.setenv(cli.CAP_ENV, "many")
    assert run(["verify", "--gen", "petersen"])[0] == 2


def test_verify_exact():
    code, out, _ = run(["verify", "--gen", "complete:5", "--exact", "--format", "json"])
    (rep,) = json_lines(out)
    assert code == 0 and rep["certified"] and rep["claim_flags"]["exact"] == "confirmed"
    code, out, _ = run(["verify", "--gen", "petersen", "--exact", "--exact-cap", "50", "--format", "json"])
    assert json_lines(out)[0]["certified"] is False


def test_verify_graph6_and_stdin(monkeypatch):
    code, out, _ = run(["verify", "--graph6", "Dhc", "--graph6", "D~{"])
    assert code == 0 and out.count("PASS") == 2
    code, out, _ = run(["verify", "--stdin", "--format", "csv"], stdin=">>graph6<<Dhc\nD~{\n", monkeypatch=monkeypatch)
    rows = out.splitlines()
    assert code == 0 and rows[0] == ",".join(CSV_COLUMNS) and len(rows) == 3
    assert rows[1].startswith("line 1,5,2,5,2,")


def test_verify_input_errors(monkeypatch):
    assert run(["verify"])[0] == 2
    assert run(["verify", "--gen", "dodecahedron"])[0] == 2
    code, _, err = run(["verify", "--graph6", "D~"])
    assert code == 2 and "bad graph6" in err
    assert run(["verify", "--stdin"], stdin="Dhc\n???\n", monkeypatch=monkeypatch)[0] == 2
    assert run(["verify", "--gen", "petersen", "--gen", "cycle:5", "--dot", "x.dot"])[0] == 2
    assert run(["frobnicate"])[0] == 2
    assert run(["verify", "--format", "xml", "--gen", "petersen"])[0] == 2


def test_verify_failure_exit_code(monkeypatch):
    monkeypatch.setattr(cli, "verify_graph", lambda g, input_id, **kw: VerificationReport(input_id, status="fail"))
    assert run(["verify", "--gen", "petersen"])[0] == 1


def test_verify_dot(tmp_path):
    path = tmp_path / "r.dot"
    assert run(["verify", "--gen", "complete:5", "--dot", str(path)])[0] == 0
    text = path.read_text()
    assert text.startswith("graph R {") and text.count("--") == 15 * 10 // 2


def test_csv_columns():
    code, out, _ = run(["verify", "--gen", "cycle:5", "--gen", "complete:4", "--format", "csv"])
    header, *rows = out.splitlines()
    assert header == ",".join(CSV_COLUMNS) == (
        "input_id,n,k,m_R,d,lambda_star,bound,margin,diameter,is_ramanujan,certified,flags,ms_build,ms_eigen,ms_diameter"
    )
    assert len(rows) == 2


def test_json_key_sets_stable():
    code, out, _ = run(["verify", "--gen", "petersen", "--gen", "complete:4", "--gen", "cycle:5",
                        "--gen", "petersen", "--cap", "50", "--format", "json"])
    reps = json_lines(out)
    keys = {tuple(r) for r in reps}
    flag_keys = {tuple(r["claim_flags"]) for r in reps}
    assert len(reps) == 4 and len(keys) == 1 and len(flag_keys) == 1


def test_help_exits_zero():
    assert run(["--help"])[0] == 0


# predict ------------------------------------------------------------------------

def test_predict_examples():
    code, out, _ = run(["predict", "10", "3", "--json"])
    rec = json.loads(out)
    assert code == 0 and (rec["m_R"], rec["d"], rec["lambda_star_claim"]) == (75, 56, "10")
    assert rec["gap_lhs"] == pytest.approx(4.8324, abs=1e-4) and rec["gap_identity_exact"]
    code, out, _ = run(["predict", "5", "4", "--format", "json"])
    rec = json.loads(out)
    assert (rec["m_R"], rec["d"], rec["lambda_star_claim"], rec["gap_lhs"]) == (15, 10, "3", 3.0)
    code, out, _ = run(["predict", "10", "3"])
    assert "m_R=75 d=56" in out and "λ*=10" in out
    code, _, err = run(["predict", "5", "3"])
    assert code == 2 and "odd" in err


# iterate ------------------------------------------------------------------------

def test_iterate_petersen():
    code, out, _ = run(["iterate", "--gen", "petersen", "--depth", "2", "--format", "json"])
    s1, s2 = json_lines(out)
    assert code == 0
    assert s1["mode"] == "explicit" and s1["verified"] and s1["order"] == 75
    assert s2["mode"] == "symbolic" and s2["order"] == 2_088_450 and s2["note"] == "symbolic, unverified diameter"
    code, out, _ = run(["iterate", "--gen", "petersen", "--depth", "2"])
    assert "symbolic" in out and "2088450" in out


def test_iterate_c5_and_k5():
    code, out, _ = run(["iterate", "--gen", "cycle:5", "--depth", "3", "--format", "json"])
    stages = json_lines(out)
    assert code == 0 and len(stages) == 3
    assert all(s["mode"] == "explicit" and s["fixed_point"] and s["verified"] for s in stages)
    code, out, _ = run(["iterate", "--gen", "complete:5", "--depth", "1", "--exact", "--format", "json"])
    (s,) = json_lines(out)
    assert code == 0 and s["certified"] and s["verified"] and s["order"] == 15


def test_iterate_csv_and_errors():
    code, out, _ = run(["iterate", "--gen", "petersen", "--depth", "2", "--format", "csv"])
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("stage,mode,") and len(lines) == 3
    assert run(["iterate", "--gen", "petersen", "--depth", "0"])[0] == 2
    assert run(["iterate"])[0] == 2
    code, out, _ = run(["iterate", "--gen", "complete:4"])
    assert code == 0 and "SKIPPED" in out


# corpus -------------------------------------------------------------------------

def test_corpus_cubic10():
    code, out, _ = run(["corpus", str(FIXTURES / "cubic10.g6")])
    assert code == 0
    assert out.splitlines()[-1] == "summary: checked=19 passed=19 skipped=2 failed=0 malformed=0"
    assert out.count("SKIPPED (graph is not connected)") == 2


def test_corpus_trees():
    code, out, _ = run(["corpus", str(FIXTURES / "trees.g6")])
    assert code == 0 and "checked=0 passed=0 skipped=5" in out


def test_corpus_single_c5_stdin(monkeypatch):
    code, out, _ = run(["corpus"], stdin="Dhc\n", monkeypatch=monkeypatch)
    assert code == 0 and "checked=1 passed=1" in out
    assert "known C5 exception" in out


def test_corpus_malformed_lines(monkeypatch):
    code, out, err = run(["corpus"], stdin="Dhc\nD~\n\nD~{\n", monkeypatch=monkeypatch)
    assert code == 0 and "line 2: malformed graph6" in err and "malformed=1" in out
    code, _, err = run(["corpus"], stdin="D~\n~?\n", monkeypatch=monkeypatch)
    assert code == 2
    assert run(["corpus", "/nonexistent/file.g6"])[0] == 2


def test_corpus_json_summary_on_stderr():
    code, out, err = run(["corpus", str(FIXTURES / "named.g6"), "--format", "json"])
    reps = json_lines(out)
    assert code == 0 and all("input_id" in r for r in reps)
    assert err.strip().startswith("summary:")


def test_corpus_fail_fast(monkeypatch):
    calls = []

    def fake(item):
        calls.append(item[0])
        return VerificationReport(f"line {item[0]}", status="fail")

    monkeypatch.setattr(cli, "_verify_line", fake)
    code, out, _ = run(["corpus", str(FIXTURES / "cubic10.g6"), "--fail-fast"])
    assert code == 1 and calls == [1] and "failed=1" in out


def test_corpus_jobs_preserve_order():
    path = str(FIXTURES / "cubic10.g6")
    _, serial, _ = run(["corpus", path, "--format", "json"])
    _, parallel, _ = run(["corpus", path, "--format", "json", "--jobs", "2"])
    assert strip_timings(json_lines(serial)) == strip_timings(json_lines(parallel))


# spectrum -----------------------------------------------------------------------

def test_spectrum_examples():
    code, out, _ = run(["spectrum", "--gen", "petersen"])
    assert code == 0 and out.strip() == "3, 1×5, -2×4"
    _, c5, _ = run(["spectrum", "--gen", "cycle:5"])
    _, c5c, _ = run(["spectrum", "--gen", "cycle:5", "--of", "complement"])
    assert c5 == c5c
    code, out, _ = run(["spectrum", "--gen", "complete:3", "--charpoly"])
    assert out.splitlines()[-1] == "x^3 - 3x - 2"
    code, out, _ = run(["spectrum", "--graph6", "D~{", "--of", "line", "--format", "json"])
    rec = json.loads(out)
    assert rec["order"] == 10 and rec["spectrum"] == [[6.0, 1], [1.0, 4], [-2.0, 5]]


def test_spectrum_errors():
    assert run(["spectrum"])[0] == 2
    assert run(["spectrum", "--gen", "petersen", "--graph6", "Dhc"])[0] == 2
    assert run(["spectrum", "--graph6", "D??", "--of", "line"])[0] == 2


# determinism ----------------------------------------------------------------------

def test_json_deterministic_apart_from_timings():
    argv = ["verify", "--gen", "random:10,3,seed=42", "--gen", "petersen", "--exact", "--format", "json"]
    a = strip_timings(json_lines(run(argv)[1]))
    b = strip_timings(json_lines(run(argv)[1]))
    assert json.dumps(a) == json.dumps(b)


def test_console_script_subprocess():
    proc = subprocess.run([sys.executable, "-m", "ramanujan_rg", "predict", "5", "4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "m_R=15 d=10" in proc.stdout
