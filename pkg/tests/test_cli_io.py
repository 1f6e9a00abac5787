from __future__ import annotations

import json
import subprocess
import sys

import pytest

from artifact.cli_io import run


def _run(capsys, *argv: str) -> tuple[int, str, str]:
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mapr_count(capsys):
    assert _run(capsys, "mapr", "count", "--n", "5", "--dirs", "><>") == (0, "50\n", "")


def test_ext_with_negative_labels(capsys):
    code, out, _ = _run(capsys, "ext", "--n", "5", "--dirs", "><>", "--seg1", "-1:4", "--seg2", "-2:-1")
    assert code == 0
    lines = out.splitlines()
    assert lines[:3] == ["Int = 2", "dim Ext^1 geometric = 2", "dim Ext^1 oracle = 2"]
    assert lines[3:] == ["middle term: -4:2 (3,1)", "middle term: -4:-1 (2,0) + -1:2 (1,2)"]


def test_ext_of_same_endpoint_diameters(capsys):
    code, out, _ = _run(capsys, "ext", "--n", "5", "--dirs", "><>", "--seg1", "-3:3:+1", "--seg2", "-3:3:-1")
    assert code == 0
    assert out.splitlines()[0] == "Int = 0"


def test_dimvec(capsys):
    code, out, _ = _run(capsys, "dimvec", "--n", "5", "--dirs", "><>", "--seg", "-3:4", "--dump-rep")
    data = json.loads(out)
    assert code == 0
    assert data["dim"] == [1, 2, 2, 1, 1]
    assert data["rep"]["dims"] == [1, 2, 2, 1, 1]


def test_omega_json(capsys):
    code, out, _ = _run(capsys, "omega", "--n", "5", "--dirs", "><>", "--format", "json")
    assert code == 0
    assert len(json.loads(out)) == 20


def test_quiver_and_arq(capsys):
    code, out, _ = _run(capsys, "quiver", "--n", "5", "--dirs", "><>", "--kind", "A")
    assert code == 0 and len(json.loads(out)["vertices"]) == 7
    code, out, _ = _run(capsys, "arq", "--n", "4", "--dirs", "<>", "--kind", "Dbar", "--format", "dot")
    assert code == 0 and out.startswith("digraph")
    code, _, err = _run(capsys, "arq", "--n", "5", "--dirs", "><>", "--kind", "B")
    assert code == 2 and "valued" in err


def test_mapr_check_and_list(capsys):
    summands = "(1,0),(1,1),(1,2),(1,3),(2,0),(3,0),(4,0),(5,0)"
    code, out, _ = _run(capsys, "mapr", "check", "--n", "5", "--dirs", "><>", "--summands", summands)
    assert code == 0
    assert out == "almost pre-rigid: True\nmaximal: True\n"
    code, out, _ = _run(capsys, "mapr", "list", "--n", "4", "--dirs", "<>", "--json")
    assert code == 0 and len(json.loads(out)) == 14


def test_hasse_outputs(capsys):
    code, out, _ = _run(capsys, "hasse", "--n", "5", "--dirs", "><>", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["elements"]) == 50 and len(data["covers"]) == 100
    code, out, _ = _run(capsys, "hasse", "--n", "5", "--dirs", "><>", "--typeb", "--format", "json")
    assert len(json.loads(out)["elements"]) == 20
    code, out, _ = _run(capsys, "hasse", "--n", "4", "--dirs", "<>", "--triangulations")
    assert code == 0 and "rankdir=BT" in out


def test_roots(capsys):
    code, out, _ = _run(capsys, "roots", "--n", "5", "--dirs", "><>")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 16
    assert lines[-1].split() == ["-3:4", "pi2+2pi3+pi4+pi5"]


def test_polygon_to_file(capsys, tmp_path):
    target = tmp_path / "p.svg"
    code, out, _ = _run(capsys, "polygon", "--n", "5", "--dirs", "><>", "--seg", "-3:4", "--seg", "-2:2:-1", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("<svg")


def test_verify_single_check(capsys):
    code, out, _ = _run(capsys, "verify", "--nmax", "5", "--suite", "fixtures")
    assert code == 0
    assert out.startswith("PASS 6 worked-example fixtures")


@pytest.mark.parametrize(
    "argv",
    [
        ["mapr", "count", "--n", "3", "--dirs", "<"],
        ["mapr", "count", "--n", "5", "--dirs", "><"],
        ["dimvec", "--n", "5", "--dirs", "><>", "--seg", "2:x"],
        ["dimvec", "--n", "5", "--dirs", "><>", "--seg", "-3:3"],
        ["mapr", "check", "--n", "5", "--dirs", "><>"],
        ["mapr", "check", "--n", "5", "--dirs", "><>", "--summands", "(9,0)"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["nosuchcommand"])
    assert exc.value.code == 2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "artifact", "mapr", "count", "--n", "4", "--dirs", "<>"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "14\n"
