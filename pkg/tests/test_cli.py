import subprocess
import sys

import pytest


from cli_cases import DOCUMENTED, RAMP, run


@pytest.mark.parametrize("argv, expected", DOCUMENTED, ids=lambda a: " ".join(a) if isinstance(a, list) else "")
def test_documented_commands(argv, expected):
    code, out, err = run(argv)
    assert (code, out.strip(), err) == (0, expected, "")


def test_member_failure_names_the_error():
    code, out, err = run(["member", "--model", "bounded", "ramp(1; ; poly[0,-1])"])
    assert code == 1 and out == ""
    assert err.strip() == "NotInCone: branch (1)^w limit -inf"


@pytest.mark.parametrize("argv, name", [
    (["parse-check", "const 3/0"], "ParseError"),
    (["add", "split(const -inf, const 0)", "const 1"], "NotInCone"),
    (["riesz", "const 9", "const 2", "const 3"], "PreconditionFailed"),
    (["truncate", "const -1"], "NotPositive"),
    (["transport", "--inverse", "3", RAMP], "NotRepresentable"),
    (["eval", RAMP, "11"], "CellNotResolved"),
    (["inf", "const 1", "--lower", "const 2"], "NoLowerBound"),
])
def test_domain_errors_exit_1(argv, name):
    code, _, err = run(argv)
    assert code == 1 and err.startswith(name + ":")


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["add", "const 1"], ["axioms", "--trials", "0"],
                                  ["axioms", "--check", "nope"], ["axioms", "--trial", "3"]])
def test_usage_errors_exit_2(argv):
    assert run(argv)[0] == 2


def test_stdin_arguments():
    assert run(["add", "-", "const 2"], stdin="const 1\n")[1].strip() == "const 3"
    assert run(["add", "-", "-"], stdin="const 1\nconst 5\n")[1].strip() == "const 6"


def test_witness_flag_prints_certificates():
    _, out, _ = run(["inftest", "--witness", RAMP])
    assert "v_lambda[1]: " in out
    _, out, _ = run(["truncate", "--witness", "const +inf", "--terms", "1"])
    assert "at e: u = +inf; t_n = n for all n" in out


def test_axioms_command():
    code, out, _ = run(["axioms", "--model", "full", "--seed", "42", "--trials", "2"])
    assert code == 0 and out.strip().endswith("result: pass")
    code, out, _ = run(["axioms", "--model", "bounded", "--check", "riesz", "--trial", "3"])
    assert code == 0 and "check: riesz trial: 3 status: ok" in out


def test_axioms_failure_exit_code(monkeypatch):
    import supcone.axioms as axioms

    monkeypatch.setattr(axioms.func, "fn_meet", axioms.fn_join)
    code, out, _ = run(["axioms", "--model", "full", "--trials", "10", "--check", "lattice"])
    assert code == 3 and "replay: supcone axioms" in out


def test_output_is_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "supcone.cli", "axioms", "--trials", "2", "--all"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout
