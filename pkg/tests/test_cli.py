import json

import pytest

from glwhit.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_orbit_order_example(capsys):
    code, out = _run(capsys, "orbit-order", "--mu", "3,2", "--lam", "4,1")
    assert code == 0
    assert json.loads(out) == {"mu": [3, 2], "lam": [4, 1], "leq": True}


def test_chain_example_glsame(capsys):
    code, out = _run(capsys, "chain", "--example", "glsame")
    assert code == 0
    data = json.loads(out)
    assert data["critical"] == ["1/4", "3/4"]
    assert data["all_certificates_pass"] is True


def test_chain_example_glsmall(capsys):
    code, out = _run(capsys, "chain", "--example", "glsmall")
    assert code == 0
    assert json.loads(out)["critical"] == ["1/2"]


def test_glmain_example(capsys):
    code, out = _run(capsys, "glmain", "--lam", "3,1", "--mu", "2,2")
    assert code == 0
    data = json.loads(out)
    assert data["S"] == [2, 0, -2, 0]
    assert all(data["checks"].values())


def test_critical(capsys):
    code, out = _run(capsys, "critical", "--s", "1,-1,1,-1",
                     "--z", "2,2,-2,-2")
    assert code == 0
    assert json.loads(out)["critical"] == ["1/4", "3/4"]


def test_jordan_type_from_file(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps([[0, 0, 0], [1, 0, 0], [0, 1, 0]]))
    code, out = _run(capsys, "jordan-type", "--matrix", str(path))
    assert code == 0
    assert json.loads(out)["type"] == [3]


def test_verify_examples(capsys):
    code, out = _run(capsys, "verify-paper-examples")
    assert code == 0
    assert json.loads(out)["all"] is True


def test_domain_error_exit_2(capsys):
    code, out = _run(capsys, "orbit-order", "--mu", "2,1", "--lam", "4,1")
    assert code == 2
    assert json.loads(out)["error"]["type"] == "NotDominatedError"


def test_usage_error_exit_64(capsys):
    assert main(["no-such-command"]) == 64
    assert main([]) == 64


def test_deterministic_output(capsys):
    _, first = _run(capsys, "principal", "--eta", "2,2")
    _, second = _run(capsys, "principal", "--eta", "2,2")
    assert first == second


def test_mirabolic_subcommand(capsys):
    code, out = _run(capsys, "mirabolic", "--eta", "1,2")
    assert code == 0
    data = json.loads(out)
    assert data["all"] and data["hom_split_all"]
    # out-of-hypothesis composition reports failure via exit code 1
    code, out = _run(capsys, "mirabolic", "--eta", "2,1")
    assert code == 1
    assert json.loads(out)["all"] is False


def test_heisenberg_subcommand(capsys):
    code, out = _run(capsys, "heisenberg", "--eta", "2,1")
    assert code == 0
    assert json.loads(out)["all_checks_pass"] is True
