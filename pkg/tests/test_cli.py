import json
import shutil
import subprocess
import sys

import pytest

from mbrace import cli, instances


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_theta_cubed(capsys):
    code, out, _ = run(capsys, "eval", "-a", "exterior.alg.json", "-e", "{m}{m}{th,th,th}")
    assert code == 0
    assert out.strip() == "0"


def test_eval_with_oracle(capsys):
    code, out, _ = run(capsys, "eval", "-a", "exterior", "-e", "{m}{th, 1}", "--oracle")
    assert code == 0
    assert "th" in out


def test_eval_file(tmp_path, capsys):
    f = tmp_path / "prog.brace"
    f.write_text("# two lines\n{m}{1, th}\n\n{m}{th, th}\n")
    code, out, _ = run(capsys, "eval", "-a", "exterior", "-f", str(f))
    assert code == 0
    assert out.splitlines()[1] == "0"


def test_degrees(capsys):
    code, out, _ = run(capsys, "degrees", "-a", "exterior", "-e", "{m}{m}")
    assert code == 0
    assert out.startswith("D=3 R=1 d=2")


def test_oracle_diff_json(capsys):
    code, out, _ = run(capsys, "oracle-diff", "-a", "exterior", "-e", "{m}{m}{th, 1, th}")
    rep = json.loads(out)
    assert code == 0
    assert rep["version"] == 1
    assert rep["results"][0]["agree"]
    assert rep["results"][0]["terms"]


@pytest.mark.parametrize("argv", [
    ["eval", "-a", "missing.alg.json", "-e", "{m}"],
    ["eval", "-a", "exterior", "-e", "{m}{th,"],
    ["eval", "-a", "exterior", "-e", "{nope}{th}"],
    ["eval", "-a", "exterior", "-f", "/nonexistent/file.brace"],
    ["check", "nosuch"],
    ["bialg-check", "--instance", "exterior"],
])
def test_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_parse_error_has_position(capsys):
    code, _, err = run(capsys, "eval", "-a", "exterior", "-e", "{m}{a b}")
    assert code == 2
    assert "1:7:" in err


def test_bad_alg_file_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.alg.json"
    p.write_text('{"basis": []}')
    code, _, err = run(capsys, "eval", "-a", str(p), "-e", "{m}")
    assert code == 2


def test_check_pre_jacobi(capsys):
    code, out, _ = run(capsys, "check", "pre-jacobi", "--seed", "7", "--dim", "2")
    assert code == 0
    assert out.splitlines()[-1].startswith("PASS")


def test_check_json_report(capsys):
    code, out, _ = run(capsys, "check", "signs", "triple", "--seed", "3", "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["ok"] and rep["seed"] == 3
    assert [c["name"] for c in rep["checks"]] == ["signs", "triple"]
    assert rep["totals"]["pass"] > 0


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("MBRACE_SEED", "5")
    _, out, _ = run(capsys, "check", "signs", "--json")
    assert json.loads(out)["seed"] == 5
    _, out, _ = run(capsys, "check", "signs", "--json", "--seed", "9")
    assert json.loads(out)["seed"] == 9
    monkeypatch.setenv("MBRACE_SEED", "x")
    code, _, _ = run(capsys, "check", "signs")
    assert code == 2


def test_failing_identity_exits_1(capsys, monkeypatch):
    from mbrace import checks

    def broken(opts):
        return [checks.Item("always-fails", "-", "fail", 1, {"defect": "e0"})]
    monkeypatch.setitem(checks.SUITES, "broken", ("a check that fails", broken))
    code, out, _ = run(capsys, "check", "broken")
    assert code == 1
    assert "FAIL" in out and '"defect": "e0"' in out


def test_discrepancy_does_not_fail(capsys):
    code, out, _ = run(capsys, "bv-check")
    assert code == 0
    assert "DISCREPANCY" in out and "order-2-claim" in out


def test_aliases(capsys):
    code, out, _ = run(capsys, "bialg-check", "--instance", "z2", "--degree-max", "3", "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["checks"][0]["name"] == "bialg"
    assert {it["instance"] for it in rep["checks"][0]["items"][:5]} == {"z2"}


def test_phi_prints_tower(capsys):
    code, out, _ = run(capsys, "phi", "--r-max", "3")
    assert code == 0
    assert "Phi^1:" in out and out.strip().endswith("order: 3")


def test_jobs_give_same_report(capsys):
    _, one, _ = run(capsys, "check", "signs", "pre-jacobi", "--json", "--seed", "2")
    _, two, _ = run(capsys, "check", "signs", "pre-jacobi", "--json", "--seed", "2", "--jobs", "2")
    assert one == two


def test_fuzz(capsys):
    code, out, _ = run(capsys, "fuzz", "--seed", "4", "--count", "10")
    rep = json.loads(out)
    assert code == 0 and rep["count"] == 10 and rep["mismatches"] == []


def test_console_script_installed():
    exe = shutil.which("mbrace")
    if exe is None:
        pytest.skip("console script not on PATH")
    res = subprocess.run([exe, "eval", "-a", "exterior.alg.json", "-e", "{m}{m}{th,th,th}"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "0"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "mbrace.cli", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("mbrace ")
