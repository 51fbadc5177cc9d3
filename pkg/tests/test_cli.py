import json
import subprocess
import sys

import pytest

from partcolor.cli import main
from partcolor.io import read_certificate

C5 = "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n"


@pytest.fixture
def o5(tmp_path):
    path = tmp_path / "o5.col"
    assert main(["construct", "--family", "O", "--n", "5", "--out", str(path)]) == 0
    return path


@pytest.fixture
def c5(tmp_path):
    path = tmp_path / "c5.col"
    path.write_text(C5)
    return path


def test_chi_of_o5(o5, capsys):
    capsys.readouterr()
    assert main(["chi", "--input", str(o5)]) == 0
    assert capsys.readouterr().out.strip() == "5"


def test_classify_o5(o5, capsys):
    assert main(["classify", "--input", str(o5), "--p", "1"]) == 0
    assert "IsO5" in capsys.readouterr().out


def test_classify_hypothesis_not_met(c5, capsys):
    assert main(["classify", "--input", str(c5), "--p", "0"]) == 1
    assert "HypothesisNotMet" in capsys.readouterr().out


def test_partition_c5(c5, tmp_path, capsys):
    out = tmp_path / "cert.json"
    assert main(["partition", "--input", str(c5), "--r", "2,2", "--d", "4", "--out", str(out)]) == 0
    assert "Outcome2" in capsys.readouterr().out
    doc = read_certificate(out)
    assert doc["outcome"] == "partition" and doc["checker"]["passed"]
    assert doc["params"]["r"] == [2, 2] and doc["params"]["d"] == 4
    assert main(["check", "--input", str(c5), "--cert", str(out)]) == 0


def test_check_detects_tampering(tmp_path, capsys):
    k5 = tmp_path / "k5.col"
    main(["construct", "--family", "K", "--n", "5", "--out", str(k5)])
    cert = tmp_path / "cert.json"
    assert main(["partition", "--input", str(k5), "--r", "2,2", "--d", "4", "--out", str(cert)]) == 0
    doc = json.loads(cert.read_text())
    assert doc["outcome"] == "special"
    gone = doc["sets"]["F"][0].pop()
    doc["sets"]["Q"].remove(gone)
    cert.write_text(json.dumps(doc))
    capsys.readouterr()
    assert main(["check", "--input", str(k5), "--cert", str(cert)]) == 3
    assert "FAIL" in capsys.readouterr().out


def test_trace_flag(tmp_path):
    k5 = tmp_path / "k5.col"
    main(["construct", "--family", "K", "--n", "5", "--out", str(k5)])
    cert = tmp_path / "cert.json"
    assert main(["degen", "--input", str(k5), "--r", "2,2", "--d", "4", "--trace", "--out", str(cert)]) == 0
    assert read_certificate(cert)["outcome"] == "join"


def test_borodin_and_color(o5, capsys):
    assert main(["borodin", "--input", str(o5), "--r1", "3", "--r2", "2"]) == 0
    assert main(["color", "--input", str(o5), "--r", "3,3", "--d", "5"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and "coloring" in out


def test_brooks(tmp_path, capsys):
    g = tmp_path / "g.txt"
    g.write_text("0 1\n1 2\n2 3\n3 0\n0 2\n")
    assert main(["brooks", "--input", str(g), "--colors", "3"]) == 0
    assert main(["brooks", "--input", str(g), "--colors", "2"]) == 1


def test_critical_extracts(tmp_path, capsys):
    g = tmp_path / "g.txt"
    g.write_text("0 1\n1 2\n2 0\n2 3\n")
    sub = tmp_path / "sub.col"
    assert main(["critical", "--input", str(g), "--out", str(sub)]) == 0
    out = capsys.readouterr().out
    assert "vertex critical: no" in out and "[0, 1, 2]" in out
    assert sub.read_text().startswith("p edge 3 3")


def test_construct_to_stdout(capsys):
    assert main(["construct", "--family", "E", "--n", "3", "--format", "edge-list"]) == 0
    assert capsys.readouterr().out == "n 3\n"


def test_precondition_exit_code(c5, capsys):
    assert main(["partition", "--input", str(c5), "--r", "1,1", "--d", "2"]) == 1
    assert main(["borodin", "--input", str(c5), "--r1", "1", "--r2", "2"]) == 1


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.col"
    bad.write_text("p edge 2 1\ne 1 1\n")
    assert main(["chi", "--input", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert main(["chi", "--input", str(tmp_path / "missing.col")]) == 2
    assert main(["chi"]) == 2


def test_unknown_flag_prints_usage(c5, capsys):
    assert main(["partition", "--input", str(c5), "--r", "2,2", "--d", "4", "--bogus"]) == 2
    assert "usage" in capsys.readouterr().err
    assert main(["frobnicate"]) == 2


def test_verify_corpus(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["verify-corpus", "--max-n", "6", "--grid", "2,2:2,3,4", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["ok"] and report["failed"] == 0 and report["passed"] == report["checks"] > 0
    assert main(["verify-corpus", "--max-n", "4", "--engines", "nope"]) == 2


def test_deterministic_output(c5, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        main(["degen", "--input", str(c5), "--r", "1,2", "--d", "2", "--seed", "3", "--out", str(path)])
    assert a.read_text() == b.read_text()


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "partcolor.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and "partcolor" in out.stdout
