import json
import subprocess
import sys
from pathlib import Path

import pytest

from quasipoisson.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_good_input(capsys):
    code, out, _ = run(capsys, "verify-bialgebra", "--input", str(DATA / "sh2.bialg.json"))
    assert code == 0
    assert out.strip().endswith("result: PASS (0 failing of 10)")


def test_twisted_input(capsys):
    assert run(capsys, "verify-bialgebra", "--input", str(DATA / "twisted.bialg.json"))[0] == 0


def test_broken_input_fails_the_third_axiom(capsys):
    code, out, _ = run(capsys, "verify-bialgebra", "--input", str(DATA / "broken.bialg.json"), "--json")
    assert code == 1
    failing = {r["check_id"] for r in json.loads(out)["records"] if not r["passed"]}
    assert "axiom.mu_cojacobi_anomaly.input" in failing
    assert not any(k.startswith("axiom.") and k != "axiom.mu_cojacobi_anomaly.input" for k in failing)


def test_malformed_input_exits_3(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    data = json.loads((DATA / "sh2.bialg.json").read_text())
    data["mu"][0][0][1] = 1.0
    bad.write_text(json.dumps(data))
    code, out, err = run(capsys, "verify-bialgebra", "--input", str(bad))
    assert code == 3 and out == ""
    assert "mu[0][0][1]" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["nope"],
        [],
        ["verify-loop", "--bogus"],
        ["verify-loop", "--samples", "0"],
        ["verify-loop", "--tol", "-1"],
        ["verify-loop", "--n", "7"],
        ["verify-sh2", "--n", "3"],
        ["verify-sh2", "--radius", "2"],
        ["verify-loop", "--input", "x.json"],
        ["all", "--n", "2"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    capsys.readouterr()


def test_tol_override_and_out(capsys, tmp_path):
    out_path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify-loop", "--samples", "2", "--tol", "1e-300", "--out", str(out_path), "--quiet")
    assert code == 1 and out == ""
    data = json.loads(out_path.read_text())
    assert {r["tolerance"] for r in data["records"]} == {1e-300}
    assert data["environment"]["tol_override"] == 1e-300


def test_flags_reach_the_suites(capsys):
    code, out, _ = run(capsys, "verify-loop", "--n", "4", "--samples", "3", "--scale", "0.2", "--seed", "5", "--json")
    data = json.loads(out)
    assert code == 0
    assert {r["check_id"].rsplit(".", 1)[1] for r in data["records"]} == {"n4"}
    assert {r["samples"] for r in data["records"]} == {3}
    assert data["environment"]["suites"]["verify-loop"]["scale"] == 0.2


def test_text_output_honours_no_color(capsys, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    code, out, _ = run(capsys, "verify-double-algebra", "--n", "2")
    assert code == 0 and "\033[" not in out
    assert all(("PASS" in line) for line in out.splitlines()[1:])


def test_sh2_suite_with_seed(capsys):
    assert run(capsys, "verify-sh2", "--seed", "1", "--quiet")[0] == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quasipoisson", "verify-bialgebra", "--input", str(DATA / "broken.bialg.json"), "--quiet"],
        capture_output=True,
    )
    assert proc.returncode == 1 and proc.stdout == b""
