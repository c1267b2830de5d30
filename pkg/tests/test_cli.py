import json
import subprocess
import sys
from pathlib import Path

import pytest

from gsetfourier.cli import main
from gsetfourier.problemfile import ProblemFileError, parse_problem, render_json

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"

TWO_ORBIT = str(PROBLEMS / "klein_two_orbits.json")
THREE_ORBIT = str(PROBLEMS / "klein_three_orbits.json")
THREE_ORBIT_Z3 = str(PROBLEMS / "klein_three_orbits_z3.json")
REGULAR = str(PROBLEMS / "klein_regular.json")
Z4 = str(PROBLEMS / "z4_regular.json")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_info_two_orbits(capsys):
    code, out, _ = run(capsys, "info", TWO_ORBIT)
    assert code == 0
    assert "dims: 2,1,1,0" in out
    assert "bent possible: NO" in out
    assert "faithful: yes" in out


def test_info_three_orbits(capsys):
    code, out, _ = run(capsys, "info", THREE_ORBIT)
    assert code == 0
    assert "dims: 3,1,1,1" in out
    assert "bent possible: YES (necessary condition)" in out


def test_check_bent_all_criteria(capsys):
    code, out, _ = run(capsys, "check-bent", THREE_ORBIT, "--criterion", "all")
    assert code == 0
    assert "BENT (all criteria agree)" in out
    assert "energy 9.000000000 per character" in out
    assert "distance 2.121320344" in out


def test_check_bent_not_bent_still_exits_zero(capsys, tmp_path):
    problem = json.loads(Path(THREE_ORBIT).read_text())
    problem["function"]["exponents"] = [0, 0, 0, 0, 0, 0]
    path = tmp_path / "constant.json"
    path.write_text(json.dumps(problem))
    code, out, _ = run(capsys, "check-bent", str(path))
    assert code == 0
    assert "NOT BENT" in out


def test_check_pnl(capsys):
    code, out, _ = run(capsys, "check-pnl", THREE_ORBIT_Z3, "--mode", "both")
    assert code == 0
    assert "G-PERFECT NONLINEAR" in out
    assert "derivative distribution 2,2,2 for each nontrivial direction" in out


def test_search_bent_empty(capsys):
    code, out, _ = run(capsys, "search-bent", TWO_ORBIT, "--q", "4")
    assert code == 0
    assert "0 bent functions among 256 candidates" in out


def test_search_bent_regular(capsys):
    code, out, _ = run(capsys, "search-bent", REGULAR, "--q", "2", "--criterion", "all")
    assert code == 0
    assert "8 bent functions among 16 candidates" in out


def test_search_pnl(capsys):
    code, out, _ = run(capsys, "search-pnl", THREE_ORBIT_Z3, "--mode", "both")
    assert code == 0
    assert "perfect nonlinear functions among 729 candidates" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", THREE_ORBIT)
    assert code == 0
    assert "dual basis verification: PASS" in out


def test_every_shipped_problem_runs_everywhere(capsys):
    files = sorted(str(p) for p in PROBLEMS.glob("*.json"))
    assert len(files) == 5
    for path in files:
        problem = json.loads(Path(path).read_text())
        commands = [["info"], ["dual"], ["verify"]]
        kind = problem.get("function", {}).get("kind")
        if kind in ("roots_of_unity", "complex"):
            commands += [["fourier"], ["decompose"], ["check-linear"], ["check-bent"]]
            commands += [["search-bent", "--q", "2"]]
        if kind == "group_valued":
            commands += [["check-pnl"], ["search-pnl"]]
        for command in commands:
            code, _, err = run(capsys, command[0], path, *command[1:])
            assert code == 0, (path, command, err)


def test_machine_reports_are_byte_identical(capsys):
    _, first, _ = run(capsys, "check-bent", THREE_ORBIT, "--format", "machine")
    _, second, _ = run(capsys, "check-bent", THREE_ORBIT, "--format", "machine")
    assert first == second
    report = json.loads(first)
    assert report["verdict"] is True
    assert set(report) >= {"verdict", "energies", "derivative_sums", "distance", "tolerance"}


def test_machine_report_complex_pairs_roundtrip(capsys):
    _, out, _ = run(capsys, "fourier", REGULAR, "--format", "machine")
    report = json.loads(out)
    values = [complex(re, im) for re, im in report["spectrum"]]
    assert values == pytest.approx([2 + 0j, 2 + 0j, 2 + 0j, -2 + 0j], abs=1e-12)


def test_dual_machine_report_has_gdual_key(capsys):
    _, out, _ = run(capsys, "dual", TWO_ORBIT, "--format", "machine")
    report = json.loads(out)
    assert "gdual" in report and len(report["gdual"]) == 4
    assert report["verified"] is True


def test_console_script_byte_identity():
    cmd = [sys.executable, "-m", "gsetfourier.cli", "check-bent", THREE_ORBIT,
           "--format", "machine"]
    first = subprocess.run(cmd, capture_output=True, check=True)
    second = subprocess.run(cmd, capture_output=True, check=True)
    assert first.stdout == second.stdout


def test_missing_file_is_input_error(capsys):
    code, _, err = run(capsys, "info", "/nonexistent/problem.json")
    assert code == 1
    assert "error:" in err


def test_malformed_json_reports_position(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"group": [2,]}')
    code, _, err = run(capsys, "info", str(path))
    assert code == 1
    assert "line 1" in err


def test_unknown_keys_rejected(capsys, tmp_path):
    problem = json.loads(Path(TWO_ORBIT).read_text())
    problem["extra"] = 1
    path = tmp_path / "extra.json"
    path.write_text(json.dumps(problem))
    code, _, err = run(capsys, "info", str(path))
    assert code == 1
    assert "unknown keys" in err


def test_bad_permutation_rejected(capsys, tmp_path):
    problem = json.loads(Path(TWO_ORBIT).read_text())
    problem["action"]["generators"]["e1"] = [0, 0, 3, 2]
    path = tmp_path / "badperm.json"
    path.write_text(json.dumps(problem))
    code, _, err = run(capsys, "info", str(path))
    assert code == 1
    assert "permutation" in err


def test_missing_function_is_input_error(capsys):
    code, _, err = run(capsys, "check-bent", TWO_ORBIT)
    assert code == 1
    assert "function" in err


def test_non_unitary_function_rejected(capsys, tmp_path):
    problem = json.loads(Path(TWO_ORBIT).read_text())
    problem["function"] = {"kind": "complex", "values": [[2, 0], [1, 0], [1, 0], [1, 0]]}
    path = tmp_path / "nonunitary.json"
    path.write_text(json.dumps(problem))
    code, _, err = run(capsys, "check-bent", str(path))
    assert code == 1
    assert "unitary" in err


def test_budget_exceeded_exit_code(capsys, tmp_path):
    perm = list(range(1, 30)) + [0]
    problem = {"group": [30], "action": {"points": 30, "generators": {"e1": perm}}}
    path = tmp_path / "huge.json"
    path.write_text(json.dumps(problem))
    code, _, err = run(capsys, "search-bent", str(path), "--q", "4")
    assert code == 2
    assert "budget" in err


def test_search_pnl_needs_codomain(capsys):
    code, _, err = run(capsys, "search-pnl", TWO_ORBIT)
    assert code == 1
    assert "codomain" in err


def test_search_pnl_codomain_flag(capsys):
    code, out, _ = run(capsys, "search-pnl", TWO_ORBIT, "--codomain", "2")
    assert code == 0
    assert "among 16 candidates" in out


# -- problem file parsing unit checks ---------------------------------------------


def test_parse_function_kinds():
    base = json.loads(Path(THREE_ORBIT).read_text())
    problem = parse_problem(json.dumps(base))
    assert problem.function_kind == "roots_of_unity"
    assert problem.gset.n == 6

    base["function"] = {"kind": "complex", "values": [[1, 0]] * 6}
    assert parse_problem(json.dumps(base)).function_kind == "complex"

    base["function"] = {"kind": "group_valued", "codomain": [3], "values": [[0]] * 6}
    assert parse_problem(json.dumps(base)).function_kind == "group_valued"

    base["function"] = {"kind": "other"}
    with pytest.raises(ProblemFileError):
        parse_problem(json.dumps(base))


def test_parse_rejects_wrong_lengths():
    base = json.loads(Path(THREE_ORBIT).read_text())
    base["function"]["exponents"] = [0, 1]
    with pytest.raises(ProblemFileError, match="6"):
        parse_problem(json.dumps(base))


def test_render_json_formats():
    assert render_json({"a": 1.5, "b": [True, None, "x"], "c": 2}) == \
        '{"a": 1.5, "b": [true, null, "x"], "c": 2}'
    assert render_json(0.1) == "0.10000000000000001"
    assert float(render_json(1 / 3)) == 1 / 3
