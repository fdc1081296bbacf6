import json

import pytest

from sphquad.builders import build_net
from sphquad.cli import main, parse_angle_arg


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--bound", "1")
    assert code == 0
    assert out.split() == ["P0", "X[0,1]", "X[1,0]", "Xbar[0,1]", "Xbar[1,0]", "X'[0,0]", "X'bar[0,0]"]


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--bound", "0", "--json")
    assert code == 0
    assert json.loads(out) == {"label": "P0", "corners": [0, 0, 0, 0]}


def test_feasible(capsys):
    code, out, _ = run(capsys, "feasible", "--label", "X[0,1]", "--angles", "0.5,0.5,0.5,1.55")
    data = json.loads(out)
    assert code == 0 and data["feasible"]
    assert min(w["slack"] for w in data["witness"]) == "1/20"


def test_infeasible_exit_code(capsys):
    code, out, _ = run(capsys, "feasible", "--label", "X[0,1]", "--angles", "0.1,0.1,0.1,1.1")
    assert code == 2 and not json.loads(out)["feasible"]


def test_chains(capsys):
    code, out, _ = run(capsys, "chains", "--angles", "0.3,0.8,0.5,2.45", "--scope", "X")
    data = json.loads(out)
    assert code == 0
    assert len(data["chains"]) == 1
    assert data["bounds"]["per_modulus"] == [1, 1]


def test_chains_batch(capsys):
    code, out, _ = run(capsys, "--jobs", "2", "chains", "--angles", "0.3,0.8,0.5,2.45", "--angles", "0.5,0.6,0.55,1.5")
    assert code == 0 and len(json.loads(out)) == 2


def test_realize_and_render(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    code, _, _ = run(capsys, "realize", "--angles", "0.6,0.7,0.65,0.55", "--out", str(cfg))
    assert code == 0
    assert json.loads(cfg.read_text())["areas"]["F"] == pytest.approx(0.5)
    code, out, _ = run(capsys, "render", "--config", str(cfg), "--size", "120")
    assert code == 0 and out.startswith("<svg")


def test_validate_and_classify(tmp_path, capsys):
    path = tmp_path / "net.json"
    path.write_text(build_net("Z[1,1]").to_json())
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 0 and json.loads(out)["status"] == "VALID-GENERIC"
    code, out, _ = run(capsys, "classify", str(path))
    assert code == 0 and out.strip() == "Z[1,1]"


def test_render_label(capsys):
    code, out, _ = run(capsys, "render", "--label", "X[1,1]")
    assert code == 0 and "</svg>" in out


def test_bad_label_exit_code(capsys):
    code, _, err = run(capsys, "feasible", "--label", "Q[1,1]", "--angles", "0.5,0.5,0.5,0.5")
    assert code == 2 and "LabelSyntaxError" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "validate", "/nonexistent/net.json")
    assert code == 2 and err


def test_angle_forms():
    assert parse_angle_arg("0.3,1.8,0.5,2.45") == parse_angle_arg("a0=0.3 a1=1.8 a2=0.5 a3=2.45")
