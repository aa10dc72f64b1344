import json

import pytest

from rsmtutte.cli import main


@pytest.fixture
def k3_file(tmp_path):
    data = {
        "name": "k3",
        "representation": {
            "kind": "graph",
            "vertices": 3,
            "edges": [[0, 1], [1, 2], [0, 2]],
        },
        "multiplicity": {"kind": "trivial"},
    }
    path = tmp_path / "k3.json"
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def seg2_file(tmp_path):
    data = {
        "name": "seg2",
        "representation": {"kind": "vectors", "dim": 1, "vectors": [[2]]},
        "multiplicity": {"kind": "arithmetic"},
    }
    path = tmp_path / "seg2.json"
    path.write_text(json.dumps(data))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_poly_tutte(capsys, k3_file):
    code, out, _ = run(capsys, ["poly", k3_file, "--which", "T"])
    assert code == 0
    assert out.strip() == "x^2 + x + y"


def test_poly_chi(capsys, k3_file):
    code, out, _ = run(capsys, ["poly", k3_file, "--which", "chi"])
    assert code == 0
    assert out.strip() == "t^3 - 3*t^2 + 2*t"


def test_poly_uniform_merges_variables(capsys, k3_file):
    code, out, _ = run(
        capsys, ["poly", k3_file, "--which", "ehr", "--uniform"]
    )
    assert code == 0
    assert out.strip() == "3*v^2 + 3*v + 1"


def test_expect_worked_value(capsys, k3_file):
    code, out, _ = run(
        capsys,
        ["expect", k3_file, "--model", "restriction", "--id", "E-CHI-RES",
         "--p", "1/2", "--at", "t=3"],
    )
    assert code == 0
    assert out.strip() == "123/8"


def test_expect_brute_force_agrees(capsys, k3_file):
    code, out, _ = run(
        capsys,
        ["expect", k3_file, "--model", "restriction", "--id", "E-CHI-RES",
         "--p", "1/3,1/2,1", "--at", "t=4", "--brute-force"],
    )
    assert code == 0
    brute = out.strip()
    code, out, _ = run(
        capsys,
        ["expect", k3_file, "--model", "restriction", "--id", "E-CHI-RES",
         "--p", "1/3,1/2,1", "--at", "t=4"],
    )
    assert code == 0
    assert out.strip() == brute


def test_expect_wrong_model_rejected(capsys, k3_file):
    code, _, err = run(
        capsys,
        ["expect", k3_file, "--model", "contraction", "--id", "E-CHI-RES",
         "--p", "1/2", "--at", "t=3"],
    )
    assert code == 2
    assert "restriction" in err


def test_ehrhart_counts(capsys, seg2_file):
    code, out, _ = run(capsys, ["ehrhart", seg2_file, "--k", "3"])
    assert code == 0
    assert out.strip() == "7"
    code, out, _ = run(
        capsys, ["ehrhart", seg2_file, "--k", "1", "--half-open"]
    )
    assert code == 0
    assert out.strip() == "2"


def test_verify_file_pass(capsys, k3_file):
    code, out, _ = run(
        capsys,
        ["verify", k3_file, "--id", "E-Z", "--id", "CONV-T",
         "--trials", "1", "--seed", "2"],
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1].endswith("passed, 0 failed")
    assert all(l.startswith("PASS") for l in lines[:-1])


def test_verify_failure_exit_code(capsys, seg2_file, monkeypatch):
    # corrupt the geometric oracle so the identity genuinely fails
    import rsmtutte.expect as expect_mod

    monkeypatch.setattr(
        expect_mod, "lattice_points_half_open", lambda gens, k: 999
    )
    code, out, _ = run(
        capsys,
        ["verify", seg2_file, "--id", "E-HALF", "--trials", "1"],
    )
    assert code == 3
    assert "FAIL" in out


def test_unknown_identity_is_input_error(capsys, k3_file):
    code, _, err = run(
        capsys,
        ["expect", k3_file, "--model", "restriction", "--id", "NOPE",
         "--p", "1/2"],
    )
    assert code == 2
    assert "unknown identity" in err


def test_missing_file_is_input_error(capsys):
    code, _, err = run(capsys, ["poly", "/no/such/file.json", "--which", "T"])
    assert code == 2


def test_sample_deterministic(capsys, k3_file):
    argv = ["sample", k3_file, "--f", "T", "--p", "0.5", "--n", "500",
            "--seed", "4", "--at", "x=2", "--at", "y=2"]
    code, out1, _ = run(capsys, argv)
    assert code == 0
    code, out2, _ = run(capsys, argv)
    assert out1 == out2
    assert out1.startswith("estimate ")
