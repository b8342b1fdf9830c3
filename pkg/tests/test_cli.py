import io
import json
import subprocess
import sys

import pytest

from wordassoc import cli, config


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = cli.run(list(argv), out, err)
    return status, out.getvalue(), err.getvalue()


def report(*argv):
    status, out, _ = run(*argv)
    return status, json.loads(out)


def test_check_refuted_exit_1():
    status, doc = report("check", "--fn", "indexer2", "--class", "A", "--domain", "D3", "--bound", "6")
    assert status == 1
    ce = doc["verdict"]["counterexample"]
    assert ce["y"] == "aaa" and ce["x"] == "ε" and ce["z"] == "ε"
    assert doc["command"][0] == "check"
    assert doc["config_digest"].startswith("sha256:")


def test_check_passed_exit_0():
    status, doc = report("check", "--fn", "identity", "--class", "A", "--domain", "full", "--bound", "4")
    assert status == 0
    assert doc["verdict"]["status"] == "passed"
    assert doc["verdict"]["note"] == "bounded check, not a proof"


@pytest.mark.parametrize("argv, key", [
    (["check", "--fn", "nosuch", "--class", "A"], "nosuch"),
    (["check", "--fn", "identity", "--class", "A", "--domain", "D9"], "D9"),
    (["check", "--fn", "identity", "--class", "Z"], "Z"),
    (["check", "--fn", "identity", "--class", "A", "--frobnicate"], "--frobnicate"),
    (["profile", "--fn", "identity", "--max-m", "9", "--bound", "3"], "max_m"),
    ([], "subcommand"),
])
def test_configuration_errors_exit_2(argv, key):
    status, out, err = run(*argv)
    assert status == 2 and out == ""
    assert key in err


def test_reports_are_byte_identical():
    argv = ["profile", "--fn", "indexer1", "--family", "A", "--bound", "4", "--max-m", "3"]
    assert run(*argv)[1] == run(*argv)[1]


def test_degree_lines():
    _, doc = report("degree", "--fn", "indexer2", "--bound", "6", "--max-m", "4")
    assert doc["degree"].startswith("d = 2^-2 = 1/4 (observed at N=6, max_m=4")
    _, doc = report("degree", "--fn", "prefix2", "--bound", "5", "--max-m", "3")
    assert doc["degree"].startswith("d = 0")
    _, doc = report("degree", "--fn", "eps_to_a", "--bound", "3", "--max-m", "2")
    assert doc["degree"].startswith("outside hierarchy")


def test_factorize_length_table():
    status, doc = report("factorize", "--fn", "length", "--bound", "3")
    assert status == 0
    assert doc["H"]["ε"] == "ε" and doc["H"]["bcv"] == "aaa"
    assert doc["f"] == {"ε": "opaque:len:0", "a": "opaque:len:1", "aa": "opaque:len:2", "aaa": "opaque:len:3"}
    assert doc["checklist"]["a_f_injective"] is True
    assert doc["checklist"]["e_eq1_full"] == "passed"


def test_catalogue_lists_anchors():
    _, doc = report("catalogue")
    keys = {e["key"] for e in doc["entries"]}
    assert {"prefix", "indexer", "mean", "factor_marker"} <= keys
    assert doc["configured"]["prefix2"] == "prefix(m=2)"


def test_separate():
    _, doc = report("separate", "--classes", "A,Ap", "--domain", "D1", "--letters", "a,b",
                    "--in-len", "3", "--out-len", "2", "--bound", "3")
    assert doc["found"] is not None
    status, _, err = run("separate", "--classes", "A", "--domain", "D1")
    assert status == 2 and "--classes" in err


def test_pretty_and_timing_anywhere():
    for argv in (["--pretty", "check", "--fn", "identity", "--class", "A", "--bound", "2"],
                 ["check", "--fn", "identity", "--class", "A", "--bound", "2", "--pretty", "--timing"]):
        status, out, err = run(*argv)
        assert status == 0
        assert out.startswith("command:")
        assert ("elapsed:" in err) == ("--timing" in argv)


def test_config_file(tmp_path):
    doc = {
        "alphabet": {"symbols": ["a", "b"]},
        "functions": [
            {"name": "id", "key": "identity"},
            {"name": "bump", "patch": "id", "overrides": {"b": "a"}},
            {"name": "k", "patch": "id", "overrides": {"": "opaque:k"}},
            {"name": "twice", "compose": ["bump", "bump"]},
        ],
        "domains": {"D1": {"kind": "maxlen", "m": 1}},
        "defaults": {"bound": 3},
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(doc))
    status, rep = report("--config", str(path), "check", "--fn", "bump", "--class", "A")
    assert status == 1 and rep["verdict"]["bound"] == 3
    assert rep["config_digest"] == config.load(doc).digest
    status, rep = report("--config", str(path), "check", "--fn", "k", "--class", "A", "--domain", "D1")
    assert rep["verdict"]["counterexample"]["lhs"] == "opaque:word-required"


@pytest.mark.parametrize("doc, key", [
    ({"alphabet": {"symbols": []}}, "no letters"),
    ({"alphabet": {"symbols": ["a"]}, "colour": 1}, "colour"),
    ({"alphabet": {"symbols": ["a"]}, "functions": [{"name": "f", "key": "nope"}]}, "nope"),
    ({"alphabet": {"symbols": ["a"]}, "functions": [{"name": "f", "patch": "g"}]}, "g"),
    ({"alphabet": {"symbols": ["a"]}, "domains": {"d": {"kind": "maxlen", "m": -1}}}, "maxlen"),
    ({"alphabet": {"symbols": ["a"]}, "defaults": {"speed": 2}}, "speed"),
])
def test_bad_config_documents(tmp_path, doc, key):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    status, out, err = run("--config", str(path), "catalogue")
    assert status == 2 and key in err


def test_unreadable_config(tmp_path):
    status, _, err = run("--config", str(tmp_path / "missing.json"), "catalogue")
    assert status == 2 and "cannot read" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    status, _, err = run("--config", str(bad), "catalogue")
    assert status == 2 and "not valid JSON" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wordassoc", "check", "--fn", "identity",
                           "--class", "A", "--bound", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"]["status"] == "passed"
