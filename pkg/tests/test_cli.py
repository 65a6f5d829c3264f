"""CLI: golden-file byte equality, exit-code contract, determinism."""

import json
import os

import pytest

from dunklalg.cli import main

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def golden(name):
    with open(os.path.join(GOLDEN, name), "r", encoding="utf-8") as fh:
        return fh.read()


@pytest.mark.parametrize("name,argv", [
    ("nf_d1x1_a1.txt", ["normal-form", "D[1]*x[1]", "--group", "A", "--rank", "2"]),
    ("nf_m13m24_so.txt", ["normal-form", "M[1,3]*M[2,4]", "--group", "A", "--rank", "4",
                          "--mode", "so"]),
    ("nf_comm_zero.txt", ["normal-form", "x[1]*x[2] - x[2]*x[1]", "--group", "A", "--rank", "3"]),
    ("nf_rho_a2.json", ["normal-form", "rho", "--group", "A", "--rank", "2",
                        "--format", "json"]),
    ("verify_pfaffian_a4.json", ["verify", "pfaffian", "--group", "A", "--rank", "4",
                                 "--format", "json"]),
    ("verify_so3_a3.txt", ["verify", "so3-example", "--group", "A", "--rank", "3",
                           "--format", "text"]),
    ("verify_relso_b2.json", ["verify", "relations-so", "--group", "B", "--rank", "2",
                              "--format", "json"]),
    ("basis_so_a4_d2.txt", ["basis", "--mode", "so", "--group", "A", "--rank", "4",
                            "--degree", "2", "--format", "text"]),
    ("basis_gl_a2_d2.json", ["basis", "--mode", "gl", "--group", "A", "--rank", "2",
                             "--degree", "2", "--format", "json"]),
    ("centre_gl_a2_d2.json", ["centre", "--mode", "gl", "--group", "A", "--rank", "2",
                              "--degree", "2", "--format", "json"]),
])
def test_golden(capsys, name, argv):
    code, out = run(capsys, *argv)
    assert out == golden(name)
    assert code == 0


def test_identical_invocations_identical_bytes(capsys):
    argv = ["verify", "pfaffian", "--group", "A", "--rank", "4", "--format", "json"]
    _, first = run(capsys, *argv)
    _, second = run(capsys, *argv)
    assert first == second


def test_exit_code_contract(capsys):
    code, _ = run(capsys, "verify", "so3-example", "--group", "A", "--rank", "3")
    assert code == 0
    # honest failure: the B2 centralizer is larger than the expected power count
    code, out = run(capsys, "verify", "centre", "--group", "B", "--rank", "2",
                    "--mode", "so", "--degree", "2")
    assert code == 1
    assert "fail" in out
    code, _ = run(capsys, "normal-form", "M[1,,2]", "--group", "A", "--rank", "3")
    assert code == 2
    code, _ = run(capsys, "normal-form", "x[9]", "--group", "A", "--rank", "3")
    assert code == 2


def test_out_flag_writes_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out = run(capsys, "verify", "pfaffian", "--group", "A", "--rank", "4",
                    "--format", "json", "--out", str(path))
    assert code == 0
    assert path.read_text() == out == golden("verify_pfaffian_a4.json")


def test_timing_flag_adds_field(capsys):
    code, out = run(capsys, "verify", "pfaffian", "--group", "A", "--rank", "4",
                    "--format", "json", "--timing")
    assert code == 0
    data = json.loads(out)
    assert "timing" in data
    data.pop("timing")
    assert data == json.loads(golden("verify_pfaffian_a4.json"))


def test_numeric_coupling_mode(capsys):
    code, out = run(capsys, "normal-form", "D[1]*x[1]", "--group", "A", "--rank", "2",
                    "--numeric-g", "1/2")
    assert code == 0
    assert out == "x1*D1 + 1 + 1/2*s(12)\n"
    # wrong number of coupling values for the orbit count
    code, _ = run(capsys, "normal-form", "D[1]*x[1]", "--group", "A", "--rank", "2",
                  "--numeric-g", "1/2,3")
    assert code == 2


def test_custom_group_config(tmp_path, capsys):
    config = {
        "rank": 2,
        "roots": [["1", "-1"]],
        "orbits": [1],
        "label": "A1-custom",
    }
    path = tmp_path / "a1.json"
    path.write_text(json.dumps(config))
    code, out = run(capsys, "normal-form", "D[1]*x[1]", "--group", "custom:%s" % path,
                    "--rank", "2")
    assert code == 0
    assert out == "x1*D1 + 1 + g*s(12)\n"


def test_io_error_exit_code(capsys):
    code = main(["verify", "pfaffian", "--group", "A", "--rank", "4",
                 "--format", "json", "--out", "/nonexistent-dir/report.json"])
    captured = capsys.readouterr()
    assert code == 2
    assert "io error" in captured.err


def test_verify_hamiltonian_and_restriction_wiring(capsys):
    code, out = run(capsys, "verify", "hamiltonian", "--group", "A", "--rank", "2",
                    "--degree", "2")
    assert code == 0 and "hamiltonian-identity" in out
    code, out = run(capsys, "verify", "restriction", "--group", "A", "--rank", "2",
                    "--degree", "2")
    assert code == 0 and "restriction" in out and "gamma-pm" in out


def test_numeric_mode_runs_whole_suites(capsys):
    code, out = run(capsys, "verify", "so3-example", "--group", "A", "--rank", "3",
                    "--numeric-g", "5/7")
    assert code == 0 and "pass" in out
    code, out = run(capsys, "verify", "crossing", "--group", "A", "--rank", "3",
                    "--numeric-g", "5/7")
    assert code == 0


def test_rank_one_degenerate_group(capsys):
    code, out = run(capsys, "normal-form", "H", "--group", "A", "--rank", "1")
    assert code == 0
    assert out == "-1/2*D1^2\n"


def test_nonzero_residual_is_printed(capsys):
    # a deliberately wrong identity leaves a visible nonzero residual
    code, out = run(capsys, "normal-form", "[D[1], x[2]] - g*s[1,2]", "--group", "A",
                    "--rank", "2")
    assert code == 0
    assert out == "-2*g*s(12)\n"   # true commutator is -g*s(12)