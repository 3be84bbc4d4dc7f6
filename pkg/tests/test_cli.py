from __future__ import annotations

import io as stdio
import json
import subprocess
import sys

import pytest

from hopfological.cli import COMMANDS, run


def call(*argv):
    out = stdio.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    specs = {
        "poly_pdg_3.alg": ("truncated_poly_pdg:3", "algebra"),
        "reg.json": ("p_dg:3", "regular"),
        "triv.json": ("p_dg:3", "trivial"),
        "s2.json": ("path_algebra_A2", "simple"),
        "p1.json": ("path_algebra_A2", "projective"),
        "bim.json": ("path_algebra_A2", "bimodule"),
        "id.json": ("dg_square_zero", "identity"),
        "le.json": ("dg_square_zero", "lambda-embed"),
        "res.json": ("path_algebra_A2", "resolution"),
        "dgfree.json": ("dg_square_zero", "free-trivial"),
    }
    for name, (spec, what) in specs.items():
        extra = ["--index", "1"] if name == "s2.json" else []
        assert call("builtin", spec, "--as", what, "-o", name, *extra)[0] == 0
    return tmp_path


def test_spec_examples(files):
    assert call("integral", "--builtin", "p_dg:3") == (0, "∂^2\n")
    assert call("k0-ring", "--builtin", "taft:3") == (0, "Z[q]/(1+q+q^2)\n")
    assert call("contractible", "poly_pdg_3.alg") == (0, "-x^2\n")


def test_boolean_exit_codes(files):
    assert call("acyclic", "reg.json")[0] == 0
    assert call("acyclic", "triv.json")[0] == 1
    assert call("quasi-iso", "id.json")[0] == 0
    assert call("quasi-iso", "le.json")[0] == 1
    assert call("witness", "le.json")[0] == 0
    assert call("witness", "id.json")[0] == 1
    assert call("contractible", "--builtin", "dg_square_zero")[0] == 1
    assert call("verify-hopf", "--builtin", "taft:3")[0] == 0
    assert call("triangle", "le.json")[0] == 0
    assert call("smash", "--builtin", "truncated_poly_pdg:3")[0] == 0
    assert call("opposite", "--builtin", "upper_triangular_2")[0] == 0


def test_opposite_and_bar_stage(files):
    assert call("opposite", "--builtin", "taft_truncated:3")[0] == 2
    assert call("opposite", "--builtin", "taft_adjoint:3", "--force")[0] == 1
    code, out = call("bar-stage", "--builtin", "dg_square_zero", "-n", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["dims"] == [3, 12, 39, 120] and all(data["checks"].values())
    assert call("bar-stage", "--builtin", "dg_square_zero", "-n", "4")[0] == 2
    assert call("bar-stage", "--builtin", "dg_square_zero", "-n", "2", "--max-dim", "50")[0] == 2


def test_module_commands(files):
    for cmd in ("tensor", "hom", "stable-hom"):
        code, out = call(cmd, "reg.json", "triv.json", "--json")
        assert code == 0 and json.loads(out)["command"] == cmd
    assert json.loads(call("stable-hom", "triv.json", "triv.json", "--json")[1])["dim"] == 1
    assert call("invariants", "triv.json") == (0, "dim: 1\n")
    assert json.loads(call("stable-invariants", "reg.json", "--json")[1])["dim"] == 0
    assert call("k0-class", "triv.json") == (0, "1\n")
    assert call("k0-class", "reg.json") == (0, "0\n")
    assert call("jordan", "reg.json") == (0, "3@0\n")
    assert call("slash", "triv.json", "-q", "1")[0] == 0
    code, out = call("shift", "triv.json")
    assert code == 0 and json.loads(out)["kind"] == "hmodule"
    assert call("shift", "dgfree.json", "--inverse")[0] == 0
    assert call("cone", "le.json")[0] == 0


def test_derived_commands(files):
    code, _ = call("replace", "s2.json", "-o", "p2.json")
    assert code == 0
    code, out = call("homotopy-hom", "p2.json", "s2.json", "--json")
    assert code == 0 and json.loads(out)["dim"] == 1
    assert json.loads(call("derived-tensor", "bim.json", "s2.json", "--json")[1])["document"]["kind"] == "bmodule"
    assert call("derived-hom", "p1.json", "s2.json")[0] == 0
    assert call("derived-hom", "s2.json", "s2.json")[0] == 2
    assert call("k0-pairing", "--builtin", "path_algebra_A2") == (0, "1 0\n0 1\n")
    assert json.loads(open("res.json").read())["kind"] == "resolution"


def test_errors_exit_two(files, capsys):
    assert call("jordan", "missing.json")[0] == 2
    assert "cannot read missing.json" in capsys.readouterr().err
    (files / "bad.json").write_text('{"field": "GF(3)",\n "kind": }')
    code, out = call("jordan", "bad.json", "--json")
    assert code == 2 and "line 2" in json.loads(out)["error"]
    assert call("k0-ring", "--builtin", "nonsense:1")[0] == 2
    assert call("tensor", "reg.json")[0] == 2
    assert call("replace", "triv.json")[0] == 2


def test_every_command_is_registered():
    assert len(COMMANDS) == 27


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "hopfological", "integral", "--builtin", "exterior:2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip()
