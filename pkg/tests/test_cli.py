import json
import subprocess
import sys

import pytest

from flagdesign import sieve
from flagdesign.cli import main
from flagdesign.designlib import Design, verify_design


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_construct_unital(tmp_path, capsys):
    path = tmp_path / "u3.json"
    code, out = run(capsys, "construct", "hermitian-unital", "--q", "3", "--out", str(path))
    assert code == 0 and out == ""
    doc = json.loads(path.read_text())
    assert doc["schema"] == 1 and doc["v"] == 28 and len(doc["blocks"]) == 63
    assert doc["params"] == [28, 63, 9, 4, 1]


def test_construct_then_verify_roundtrip(tmp_path, capsys):
    design, group = tmp_path / "fano.json", tmp_path / "psl27.json"
    code, _ = run(capsys, "construct", "table1", "--line", "2", "--out", str(design),
                  "--group-out", str(group))
    assert code == 0
    code, out = run(capsys, "verify", "--design", str(design), "--group", str(group))
    rep = json.loads(out)
    assert code == 0
    assert rep["flag_transitive"] is True and rep["primitive"] is True
    assert rep["params"] == {"v": 7, "b": 7, "r": 3, "k": 3, "lambda": 1}
    assert [rep["params"][key] for key in ("v", "b", "r", "k", "lambda")] == list(
        verify_design(Design.from_dict(json.loads(design.read_text()))).as_tuple())


def test_verify_text_format(tmp_path, capsys):
    design = tmp_path / "wbs.json"
    run(capsys, "construct", "wbs", "--n", "3", "--out", str(design))
    code, out = run(capsys, "verify", "--design", str(design), "--format", "text")
    assert code == 0
    assert out.splitlines()[0].split() == ["v,b,r,k,lambda", "28,63,9,4,1"]


def test_verify_fails_with_trivial_group(tmp_path, capsys):
    design, group = tmp_path / "fano.json", tmp_path / "trivial.json"
    run(capsys, "construct", "table1", "--line", "2", "--out", str(design))
    group.write_text(json.dumps({"schema": 1, "degree": 7, "generators": [], "order": 1}))
    code, out = run(capsys, "verify", "--design", str(design), "--group", str(group))
    assert code == 1 and json.loads(out)["flag_transitive"] is False


def test_sieve_statuses_match_and_exit_reflects_rows(capsys):
    code, out = run(capsys, "sieve", "--format", "json")
    doc = json.loads(out)
    assert doc["schema"] == 1 and len(doc["rows"]) == 44
    assert all(r["status"] == r["status_paper"] for r in doc["rows"])
    assert code == (0 if all(r["matches"] for r in doc["rows"]) else 1)


def test_sieve_tsv_with_case_file(tmp_path, capsys):
    path = tmp_path / "cases.json"
    path.write_text(sieve.default_case_path().read_text())
    code, out = run(capsys, "sieve", "--cases", str(path))
    assert out.splitlines()[0].split("\t") == list(sieve.TSV_COLUMNS)


def test_tables_text(capsys):
    code, out = run(capsys, "tables")
    head = out.split("\n\n")[0].splitlines()
    assert len(head) == 7
    assert all(line.endswith("true\ttrue") for line in head[1:])


@pytest.mark.parametrize("argv", [
    ["construct", "hermitian-unital", "--q", "2"],
    ["construct", "table1", "--line", "1"],
    ["sieve"],
    ["sieve", "--format", "json"],
])
def test_deterministic_output(capsys, argv):
    _, first = run(capsys, *argv)
    _, second = run(capsys, *argv)
    assert first == second and first


def test_deterministic_across_processes(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"d{i}.json"
        subprocess.run([sys.executable, "-m", "flagdesign.cli", "construct", "table1",
                        "--line", "3", "--out", str(path)], check=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_error_object_and_exit(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"v": 4, "k": 3, "blocks": [[0, 1, 2], [0, 1, 3]]}))
    out_path = tmp_path / "report.json"
    code, out = run(capsys, "verify", "--design", str(bad), "--out", str(out_path))
    err = json.loads(out)
    assert code == 2
    assert err["schema"] == 1 and err["error"]["type"] == "DesignError"
    assert "witness" in err["error"]
    assert not out_path.exists()
    assert list(tmp_path.iterdir()) == [bad]


def test_unsupported_parameter_is_an_error(tmp_path, capsys):
    out_path = tmp_path / "x.json"
    code, out = run(capsys, "construct", "hermitian-unital", "--q", "7", "--out", str(out_path))
    assert code == 2 and json.loads(out)["error"]["type"] == "DesignError"
    assert not out_path.exists()
    code, out = run(capsys, "construct", "wbs")
    assert code == 2


def test_missing_file_is_an_error(tmp_path, capsys):
    code, out = run(capsys, "verify", "--design", str(tmp_path / "none.json"))
    assert code == 2 and json.loads(out)["error"]["type"] == "FileNotFoundError"


def test_console_script_help():
    res = subprocess.run([sys.executable, "-m", "flagdesign.cli", "--help"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    for verb in ("construct", "verify", "sieve", "tables"):
        assert verb in res.stdout
