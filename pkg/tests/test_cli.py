import json

import pytest

from drinfeld_selfisog.cli import main
from drinfeld_selfisog import serialize as ser


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


ELL = {"field": {"p": 3}, "minpoly": "y^2 - (T^3 - T + 1)", "imaginary": True}


@pytest.fixture
def order_file(tmp_path):
    path = tmp_path / "order.json"
    path.write_text(json.dumps(ELL))
    return path


def test_output_is_deterministic(capsys):
    argv = ["selfisog-t", "--q", "2", "--r", "3", "--j", "1,2,1", "--delta", "1", "--emit-g"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second and first.endswith("\n")
    data = json.loads(first)
    assert data["j"] == [1, 2, 1] and data["degree"] == ser.poly_from_json(data["phi"]).degree("X")
    g = ser.poly_from_json(data["g"][0]["poly"])
    assert g.degree("X") == 12 and data["g"][0]["constant_roots_ok"]


def test_exit_codes(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["jinv", "--q", "2"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "selfisog-t", "--q", "2", "--r", "3", "--j", "1,2")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "bound", "--which", "pairs", "--q", "3")
    assert code == 1 and err.startswith("HypothesisViolation")
    code, _, err = run(capsys, "gamma", "--order", str(tmp_path / "missing.json"), "--a", "T")
    assert code == 2


def test_bound_text_default(capsys):
    code, out, _ = run(capsys, "bound", "--which", "pairs", "--q", "5")
    assert code == 0 and out == f"{30 * 5 ** 9 - 5 * 5 ** 8}\n"
    code, out, _ = run(capsys, "bound", "--which", "Nq-cases", "--q", "5", "--format", "json")
    cases = json.loads(out)
    assert cases["total"] == cases["generic"] + cases["a0_in_Fq3"] + cases["a0_in_Fq4"]


def test_volcano_gen_then_validate(capsys, tmp_path):
    path = tmp_path / "v.json"
    code, _, _ = run(capsys, "volcano", "gen", "--group", "4", "--images", "1;3",
                     "--q", "3", "--r", "3", "--degl", "1", "--depth", "2", "--out", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert data["b"] == 9 and len(data["vertices"]) == 4 + 36 + 324
    code, out, _ = run(capsys, "volcano", "validate", str(path), "--r", "3", "--g1", "2", "--b", "9")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "volcano", "validate", str(path), "--r", "3", "--g1", "2", "--b", "8")
    assert code == 0 and not json.loads(out)["ok"]


def test_volcano_preset_dot(capsys):
    code, out, _ = run(capsys, "volcano", "preset", "r3-cycle", "--format", "dot")
    assert code == 0 and out.startswith("digraph volcano") and "cluster_level1" in out
    code, _, err = run(capsys, "jinv", "--q", "2", "--r", "3", "--format", "dot")
    assert code == 2 and "dot" in err


def test_gamma_and_fitnorm(capsys, tmp_path, order_file):
    code, out, _ = run(capsys, "gamma", "--order", str(order_file), "--a", "T", "--bound", "1")
    assert code == 0 and json.loads(out) == {"bound": 1, "count": 0, "tag": "lower bound", "witnesses": []}
    ram = tmp_path / "ram.json"
    ram.write_text(json.dumps({"field": {"p": 3}, "minpoly": "y^2 - T"}))
    code, out, _ = run(capsys, "gamma", "--order", str(ram), "--a", "T", "--certified", "--format", "text")
    assert out.splitlines() == ["gamma = 1 (exact, B = 1)", "(0, 1)"]
    ideal = tmp_path / "ideal.json"
    ideal.write_text(json.dumps({"generators": [["T", 0], ["T + 1", 0], [-1, 1]]}))
    code, out, _ = run(capsys, "fitnorm", "--order", str(order_file), "--ideal", str(ideal))
    assert code == 0 and out == "1\n"           # T and T + 1 are coprime
    ideal.write_text(json.dumps({"generators": [["T", 0], [-1, 1]]}))
    code, out, _ = run(capsys, "fitnorm", "--order", str(order_file), "--ideal", str(ideal))
    assert out == "T\n"
    code, _, err = run(capsys, "gamma", "--order", str(order_file), "--a", "T^2")
    assert code == 1 and err.startswith("NotPrime")


def test_phi_a(capsys):
    code, out, _ = run(capsys, "phi-a", "--q", "3", "--r", "2", "--a", "T^2", "--coeffs", "T,1")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "x^(q^4): 1" and lines[-1] == "x^(q^0): T^2"
    code, out, _ = run(capsys, "phi-a", "--q", "any", "--r", "3", "--a", "T^2+T+1", "--symbolic")
    assert code == 0 and out.splitlines()[-1] == "Delta^(q^3+1) = g6"
    code, out, _ = run(capsys, "phi-a", "--q", "any", "--r", "2", "--a", "T", "--symbolic",
                       "--isogeny-degree", "1", "--format", "json")
    assert json.loads(out)["kind"] == "commutation"
    code, _, _ = run(capsys, "phi-a", "--q", "any", "--r", "2", "--a", "T", "--coeffs", "T,1")
    assert code == 2


def test_points_and_check_hom(capsys):
    assert run(capsys, "points", "--q", "5", "--rexp", "3", "--f", "T^3+T+1")[1] == "5\n"
    assert run(capsys, "points", "--q", "5", "--rexp", "3", "--f", "T^3+T+1", "--projective")[1] == "6\n"
    code, out, _ = run(capsys, "check-hom", "--q", "3", "--r", "2", "--trials", "5")
    assert code == 0 and out == "5 trials, 0 failures\n"


def test_jinv(capsys):
    code, out, _ = run(capsys, "jinv", "--q", "3", "--r", "2")
    assert json.loads(out)["tuples"] == [{"deltas": [4], "delta_r": 1}]
