import json
import subprocess
import sys

import pytest

WORKED = "6 7 3 5 4 1 2"


@pytest.mark.parametrize("argv, out", [
    (["decompose", WORKED], "((5 4),(6 7 3 1),(2))\n"),
    (["decompose", WORKED, "--stripped"], "((5 4),(6 7 3 1))\n"),
    (["compose", "((5 4),(6 7 3 1))", "--n", "7"], WORKED + "\n"),
    (["compose", "((5 4),(6 7 3 1),(2))"], WORKED + "\n"),
    (["transform", "cycle", "5 2 4 3 6 1"], "5 6 1 2 4 3\n"),
    (["transform", "inverse-cycle", "5 6 1 2 4 3"], "5 2 4 3 6 1\n"),
    (["transform", "lift", "3 1 2"], "4 2 3 1\n"),
    (["transform", "daisy", "3 2 1"], "4 3 1 2\n"),
    (["parenthesize", WORKED], "(6 7 3 (5 4) 1)(2)\n"),
    (["count", "eulerian", "3", "3"], "66\n"),
    (["count", "derangement", "3", "3"], "161\n"),
    (["count", "fundamental", "3", "3", "2"], "35\n"),
    (["count", "shifted", "3", "3", "0"], "161\n"),
    (["count", "binomial", "3", "3", "-1"], "66\n"),
    (["count", "configs", "4"], "8 profiles, 24 permutations\n"),
    (["count", "configs", "4", "--profile", "1/1=2"], "6\n"),
    (["primitive", "build", "--pairing", "1,2,3,-2,4,5,-5", "--reds", "2"], "((4 2) 3 5 (7 6) 1)\n"),
    (["primitive", "invert", "4 2 3 5 7 6 1"], "(1,2,3,-2,4,5,-5) reds=2\n"),
    (["primitive", "count", "--fam", "4", "--buds", "2"], "159\n"),
    (["primitive", "phi", "--order", "5"], "1 3 21 207 2529 36243\n"),
    (["primitive", "ode-check", "--max-x", "8", "--max-t", "6"], "true\n"),
    (["decimal", "encode", "2 1"], "1.1.b\n1.2.r\n"),
    (["decimal", "encode", "1 2", "--singlet-color", "r"], "1.r\n2.r\n"),
    (["decimal", "decode", "1.1.b,1.2.r"], "2 1\n"),
])
def test_goldens(run_cli, argv, out):
    code, got, err = run_cli(*argv)
    assert (code, got, err) == (0, out, "")


def test_trace(run_cli):
    code, out, _ = run_cli("decompose", WORKED, "--trace")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 8
    assert [ln.split()[1] for ln in lines[:7]] == ["A", "A", "B", "C", "E", "C", "C"]
    assert lines[4] == "R^(5) E value=5 friend=4 ((5 4),(3 1),(2))"
    assert lines[-1] == "((5 4),(6 7 3 1),(2))"


def test_tree(run_cli):
    _, out, _ = run_cli("tree", WORKED)
    assert out.splitlines()[:2] == ["(6 7 3 (5 4) 1)  root=-", "  (5 4)  root=5 4"]
    _, out, _ = run_cli("tree", WORKED, "--relabel")
    assert out.splitlines()[0] == "(5 6 2 (4 3) 1)  root=-"


def test_multipar_round_trip(run_cli):
    _, text, _ = run_cli("multipar", WORKED)
    assert text.startswith("n=7\nlevel 0: {1,3,6,7}:2 {4,5}:1")
    _, back, _ = run_cli("multipar", text, "--decode")
    assert back == WORKED + "\n"


def test_enumerate(run_cli):
    _, out, _ = run_cli("enumerate", "compositions", "--ascents", "2,4,5", "--descents", "1,3")
    lines = out.splitlines()
    assert lines[-1] == "6 compositions" and "((2 1),(4 5 3))" in lines
    _, out, _ = run_cli("enumerate", "permutations", "--ascents", "2,4,5", "--descents", "1,3",
                        "--mode", "positions")
    assert out.split("\n")[:2] == ["2 1 5 3 4", "3 1 5 2 4"] and len(out.splitlines()) == 6


def test_oracle_sweep(run_cli):
    code, out, _ = run_cli("oracle", "sweep", "--max-n", "4")
    assert code == 0
    assert all(ln.startswith("ok") for ln in out.splitlines())
    assert "n=4 primitive scan agrees (6 primitives)" in out


class TestStructured:
    def test_result(self, run_cli):
        code, out, _ = run_cli("--format", "structured", "count", "eulerian", "3", "3")
        assert code == 0
        assert json.loads(out) == {"command": "count eulerian", "result": {"k": 3, "l": 3, "value": 66}}

    def test_flag_after_subcommand(self, run_cli):
        _, out, _ = run_cli("decompose", WORKED, "--format", "structured")
        assert json.loads(out)["command"] == "decompose"

    def test_error(self, run_cli):
        code, out, _ = run_cli("--format", "structured", "decompose", "1 1")
        assert code == 1
        assert json.loads(out) == {"command": "decompose", "error": "position 2: value 1 repeated"}


class TestExitCodes:
    def test_invalid_input(self, run_cli):
        code, out, err = run_cli("decompose", "1 1")
        assert code == 1 and out == ""
        assert err.startswith("permfam: error: position 2")

    def test_failed_check(self, run_cli):
        code, out, _ = run_cli("primitive", "ode-check", "--max-x", "8", "--max-t", "6", "--shift", "0")
        assert code == 1 and out.startswith("false (first discrepancy at x^0 t^1")
        code, out, _ = run_cli("decimal", "validate", "1.1.b,1.1.r")
        assert code == 1 and out.startswith("[leaf-head]")
        assert run_cli("decimal", "validate", "1.1.b,1.2.r")[0] == 0

    @pytest.mark.parametrize("argv", [["bogus"], [], ["count", "eulerian", "x", "1"]])
    def test_usage(self, run_cli, argv):
        code, _, err = run_cli(*argv)
        assert code == 2 and "usage" in err


def test_at_path(run_cli, tmp_path):
    f = tmp_path / "perm.txt"
    f.write_text(WORKED + "\n")
    assert run_cli("decompose", f"@{f}")[1] == "((5 4),(6 7 3 1),(2))\n"
    code, _, err = run_cli("decompose", f"@{tmp_path / 'missing'}")
    assert code == 1 and "error" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "permfam", "count", "eulerian", "3", "3"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "66\n"
