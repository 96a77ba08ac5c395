import json

import pytest

from ncg.cli import Report, main, pretty


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_normal_forms(capsys):
    assert run(capsys, "eval", "qsphere", "d*a")[1].strip() == "1 + q b c"
    assert run(capsys, "eval", "qdisk", "z*zb")[1].strip() == "1 - q^-2 w"
    assert run(capsys, "eval", "qdisk", "z*w")[1].strip() == "q^-2 w z"


def test_eval_syntax_error_points_at_column(capsys):
    code, _, err = run(capsys, "eval", "qsphere", "a + * b")
    assert code == 2
    lines = err.splitlines()
    assert lines[-1].index("^") == 2 + 4


def test_eval_rational_field(capsys):
    code, out, _ = run(capsys, "eval", "qdisk", "z*zb", "--q", "rational", "--s", "2")
    assert code == 0
    assert out.strip() == "1 - 1/16 w"


def test_check_m2_json_round_trip(capsys, tmp_path):
    target = tmp_path / "m2.json"
    code, _, _ = run(capsys, "check", "m2", "--json", "--output", str(target))
    assert code == 0
    rep = Report.from_json(target.read_text())
    assert rep.ok
    assert rep.model == "m2"
    assert Report.from_json(rep.to_json()) == rep
    ids = [c["id"] for c in rep.checks]
    assert "isometry-strict" in ids


def test_check_text_output(capsys):
    code, out, _ = run(capsys, "check", "qsphere", "--cutoff", "2")
    assert code == 0
    assert "xfail-pass isometry-strict" in out
    assert out.strip().splitlines()[-1].startswith("OK")


def test_check_exit_codes(capsys):
    assert run(capsys, "check", "qsphere", "--param", "beta=2")[0] == 2
    assert run(capsys, "check", "torus")[0] == 2
    assert run(capsys, "check", "m2", "--cutoff", "0")[0] == 2
    assert run(capsys, "check", "m2", "--param", "nonsense")[0] == 2
    assert run(capsys, "check", "m2", "--q", "rational", "--s", "x")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_check_accepts_representable_beta(capsys):
    code, out, _ = run(capsys, "check", "qsphere", "--param", "beta=q", "--cutoff", "2")
    assert code == 0
    assert "delta=q^(3/2)" in out


def test_chern_json(capsys):
    code, out, _ = run(capsys, "chern", "m2-omega10", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["gamma_plus"] == [["([[0, -2], [0, 0]])·s"]]
    assert {c["status"] for c in data["checks"]} <= {"pass", "xfail-pass"}


def test_chern_text_and_unknown_bundle(capsys):
    code, out, _ = run(capsys, "chern", "qdisk-omega10")
    assert code == 0
    assert "Gamma_+[0]" in out
    assert run(capsys, "chern", "nope")[0] == 2


def test_confluence(capsys, tmp_path):
    assert run(capsys, "confluence", "su2")[0] == 0
    assert run(capsys, "confluence", "qdisk")[0] == 0
    bad = tmp_path / "bad.pres"
    bad.write_text("[generators]\nx 0\ny 0\nz 0\n[rules]\ny*x -> z\nz*y -> x\n")
    code, out, _ = run(capsys, "confluence", str(bad))
    assert code == 1
    assert "rewrites to" in out
    assert run(capsys, "confluence", str(tmp_path / "missing.pres"))[0] == 2


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert "qdisk-localized" in out and "qsphere-omega10" in out


def test_pretty():
    assert pretty("q^(-2)*w*z") == "q^-2 w z"
    assert pretty("q^(1/2)*a") == "q^(1/2) a"
