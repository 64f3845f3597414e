from __future__ import annotations

import io
import json
import subprocess
import sys

import jsonschema
import pytest

from spexgraph import report
from spexgraph.cli import EXIT_FAIL, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, run
from spexgraph.parallel import WORKERS_ENV
from spexgraph.spectral import TOL_ENV


def call(argv, capsys, monkeypatch, stdin=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def diagnostics(err):
    return [json.loads(line) for line in err.splitlines() if line.startswith("{")]


# exit-code matrix --------------------------------------------------------------------

SCENARIOS = [
    # (argv, stdin, exit code)
    (["construct", "--family", "star-plus", "--n", "26"], "", EXIT_OK),
    (["construct", "--family", "no-such-family", "--n", "6"], "", EXIT_USAGE),
    (["construct", "--family", "star", "--n", "6", "--embed", "Bw"], "", EXIT_USAGE),
    (["construct", "--family", "k4-star", "--n", "3"], "", EXIT_USAGE),
    (["rho"], "Bw\nC~\n", EXIT_OK),
    (["rho"], "Bw\nnot-graph6\n", EXIT_USAGE),
    (["detect", "--what", "fan", "--k", "2"], "D~{\n", EXIT_OK),
    (["detect", "--what", "repeated-length", "--k", "2"], "Bw\n", EXIT_USAGE),
    (["enumerate", "--n", "5", "--connected"], "", EXIT_OK),
    (["enumerate", "--n", "11"], "", EXIT_USAGE),
    (["spex", "--n", "6", "--predicate", "gamma-2-free"], "", EXIT_OK),
    (["spex", "--n", "16", "--predicate", "gamma-2-free", "--mode", "hillclimb", "--budget", "300"], "", EXIT_RESOURCE),
    (["spex", "--n", "6", "--predicate", "gamma-2-free", "--budget", "5"], "", EXIT_USAGE),
    (["turan", "--n", "6", "--predicate", "gamma-1-free"], "", EXIT_OK),
    (["turan", "--n", "6", "--predicate", "purple"], "", EXIT_USAGE),
    (["verify", "--theorem", "T1", "--n-min", "4", "--n-max", "7"], "", EXIT_OK),
    (["verify", "--theorem", "T5", "--n-min", "4", "--n-max", "4", "--k", "2"], "", EXIT_FAIL),
    (["verify", "--theorem", "L_QUOTIENT_CONSISTENCY", "--n-min", "4", "--n-max", "5"], "", EXIT_RESOURCE),
    (["verify", "--theorem", "T9", "--n-min", "4", "--n-max", "5"], "", EXIT_USAGE),
    (["verify", "--theorem", "T1", "--n-min", "6", "--n-max", "4"], "", EXIT_USAGE),
    (["verify", "--theorem", "T1", "--n-min", "4"], "", EXIT_USAGE),
    (["frobnicate"], "", EXIT_USAGE),
    (["rho", "--bogus-flag"], "", EXIT_USAGE),
    (["rho", "--workers", "0"], "Bw\n", EXIT_USAGE),
]


@pytest.mark.parametrize("argv,stdin,want", SCENARIOS, ids=[" ".join(s[0])[:60] for s in SCENARIOS])
def test_exit_code_matrix(argv, stdin, want, capsys, monkeypatch):
    code, out, err = call(argv, capsys, monkeypatch, stdin)
    assert code == want
    if want == EXIT_USAGE:
        assert diagnostics(err), "usage errors must produce a JSON diagnostic"
        assert all({"error", "message"} <= d.keys() for d in diagnostics(err))


def test_construct_prints_one_graph6_line(capsys, monkeypatch):
    code, out, _ = call(["construct", "--family", "star-plus", "--n", "26"], capsys, monkeypatch)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 1 and lines[0][0] == chr(63 + 26)


def test_malformed_line_reports_line_number(capsys, monkeypatch):
    code, out, err = call(["rho"], capsys, monkeypatch, "Bw\n\nzz!\nC~\n")
    assert code == EXIT_USAGE
    assert [json.loads(l)["graph6"] for l in out.splitlines()] == ["Bw", "C~"]
    (d,) = [d for d in diagnostics(err) if d["error"] == "MalformedGraph6"]
    assert d["line"] == 3


def test_verify_t1_report(capsys, monkeypatch):
    # the full 4..9 range runs in the acceptance suite
    code, out, _ = call(["verify", "--theorem", "T1", "--n-min", "4", "--n-max", "7"], capsys, monkeypatch)
    assert code == 0
    doc = json.loads(out)
    assert doc["schemaVersion"] == report.SCHEMA_VERSION
    assert [e["status"] for e in doc["payload"]["perN"]] == ["PASS"] * 4
    report.validate(doc)


# schemas --------------------------------------------------------------------------------

SCHEMA_RUNS = {
    "construct": ["construct", "--family", "bipartite-embed", "--n", "10", "--embed", "Bw"],
    "rho": ["rho", "--quotient"],
    "detect": ["detect", "--what", "triangle-packing"],
    "enumerate": ["enumerate", "--n", "4", "--prune", "gamma-1-free"],
    "spex": ["spex", "--n", "12", "--predicate", "fan-2-free", "--mode", "HILLCLIMB", "--restarts", "2"],
    "turan": ["turan", "--n", "5", "--predicate", "matching-le-2-degree-le-2"],
    "verify": ["verify", "--theorem", "L_HOFFMAN_SMITH", "--n-min", "10", "--n-max", "11"],
}


@pytest.mark.parametrize("command", sorted(SCHEMA_RUNS))
def test_reports_validate_against_schema(command, tmp_path, capsys, monkeypatch):
    out_path = tmp_path / "r.json"
    code, _, _ = call(SCHEMA_RUNS[command] + ["--out", str(out_path)], capsys, monkeypatch, "Bw\nD~{\nE?Bw\n")
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["command"] == command
    report.validate(doc)
    bad = dict(doc, schemaVersion=None)
    with pytest.raises(jsonschema.ValidationError):
        report.validate(bad)


def test_csv_summary(tmp_path, capsys, monkeypatch):
    path = tmp_path / "s.csv"
    code, _, _ = call(["verify", "--theorem", "T5", "--n-min", "4", "--n-max", "6", "--k", "1",
                       "--csv", str(path)], capsys, monkeypatch)
    assert code == 0
    rows = path.read_text().splitlines()
    assert rows[0] == "theorem,n,status,margin,extremalGraph6,notes"
    assert len(rows) == 4 and all(r.startswith("T5_GYORI_TURAN,") for r in rows[1:])


def test_verify_with_input_file(tmp_path, capsys, monkeypatch):
    path = tmp_path / "pop.g6"
    path.write_text("C~\nD~{\nEFz_\n")
    code, out, _ = call(["verify", "--theorem", "L_EDGE_TRIANGLE_BOUND", "--n-min", "4", "--n-max", "6",
                         "--in", str(path)], capsys, monkeypatch)
    assert code == 0
    assert [e["n"] for e in json.loads(out)["payload"]["perN"]] == [4, 5, 6]
    code, _, err = call(["rho", "--in", str(tmp_path / "missing.g6")], capsys, monkeypatch)
    assert code == EXIT_USAGE and diagnostics(err)


# environment and determinism ---------------------------------------------------------------

def test_flags_override_environment(capsys, monkeypatch):
    monkeypatch.setenv(TOL_ENV, "1e-6")
    monkeypatch.setenv(WORKERS_ENV, "3")
    code, out, _ = call(["turan", "--n", "4", "--predicate", "gamma-1-free"], capsys, monkeypatch)
    cfg = json.loads(out)["config"]
    assert code == 0 and cfg["tol"] == 1e-6 and cfg["workers"] == 3
    code, out, _ = call(["turan", "--n", "4", "--predicate", "gamma-1-free", "--tol", "1e-11",
                         "--workers", "1"], capsys, monkeypatch)
    cfg = json.loads(out)["config"]
    assert cfg["tol"] == 1e-11 and cfg["workers"] == 1


@pytest.mark.parametrize("name,value", [(TOL_ENV, "abc"), (TOL_ENV, "-1"), (WORKERS_ENV, "zero")])
def test_bad_environment_is_usage_error(name, value, capsys, monkeypatch):
    monkeypatch.setenv(name, value)
    code, _, err = call(["turan", "--n", "4", "--predicate", "gamma-1-free"], capsys, monkeypatch)
    assert code == EXIT_USAGE and diagnostics(err)


@pytest.mark.parametrize("argv", [
    ["verify", "--theorem", "L_EDGE_TRIANGLE_BOUND", "--n-min", "6", "--n-max", "9", "--seed", "4"],
    ["spex", "--n", "7", "--predicate", "no-2-edge-disjoint-cycles"],
    ["turan", "--n", "7", "--predicate", "gamma-2-free"],
    ["enumerate", "--n", "6", "--connected", "--prune", "fan-2-free"],
])
def test_payload_is_independent_of_worker_count(argv, tmp_path, capsys, monkeypatch):
    docs = []
    for w in ("1", "2"):
        path = tmp_path / f"w{w}.json"
        assert call(argv + ["--workers", w, "--out", str(path)], capsys, monkeypatch)[0] == 0
        docs.append(json.loads(path.read_text()))
    assert report.payload_bytes(docs[0]) == report.payload_bytes(docs[1])


def test_stdout_is_data_only():
    proc = subprocess.run([sys.executable, "-m", "spexgraph", "enumerate", "--n", "4", "--log-level", "INFO"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and len(proc.stdout.splitlines()) == 11
    assert "INFO" in proc.stderr and "INFO" not in proc.stdout


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "spexgraph", "construct", "--family", "complete", "--n", "4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "C~\n"
