import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from fockbench import cli, fock, sweeps


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    return subprocess.run([sys.executable, "-m", "fockbench", *args], capture_output=True, text=True, env=full_env)


def test_fig_csv_layout(tmp_path, capsys):
    assert cli.main(["fig", "fig5", "--order", "8"]) == 0
    out = capsys.readouterr().out.splitlines()
    comments = [ln for ln in out if ln.startswith("#")]
    assert "# figure=fig5" in comments and "# n_max=8" in comments
    body = out[len(comments):]
    assert body[0] == "N,Q_ltcs"
    assert len(body) == 10
    assert all(float(ln.split(",")[1]) < 0 for ln in body[1:])


def test_fig_json(tmp_path):
    path = tmp_path / "f.json"
    assert cli.main(["fig", "fig1", "-N", "2", "--grid", "5", "--format", "json", "--out", str(path)]) == 0
    payload = json.loads(path.read_text())
    assert payload["columns"] == ["k", "dX_N2", "dP_N2"]
    assert len(payload["rows"]) == 5
    assert payload["parameters"]["orders"] == "2"


def test_fig_output_is_deterministic_across_threads(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run("fig", "fig7", "--grid", "9", "--out", str(a), env={"FOCKBENCH_THREADS": "1"}).returncode == 0
    assert run("fig", "fig7", "--grid", "9", "--out", str(b), env={"FOCKBENCH_THREADS": "4"}).returncode == 0
    assert a.read_bytes() == b.read_bytes()


def test_twelve_significant_digits():
    assert sweeps._fmt(math.pi) == "3.14159265359"
    assert sweeps._fmt(-0.0) == "0"


@pytest.mark.parametrize("argv", [
    ["fig", "fig9"],
    ["fig", "fig2", "--grid", "10"],
    ["fig", "fig7", "--alpha", "1"],
    ["fig", "fig2", "-N", "3", "-N", "4"],
    ["fig", "fig1", "--alpha-max", "2"],
    ["fig", "fig1", "--order", "0"],
    ["state", "pacs"],
    ["state", "dpacs", "--order", "2", "--k", "3"],
    ["state", "ltcs", "--alpha", "not-a-number"],
    ["protocol", "--lambda-t", "0"],
    ["protocol", "--steps", "0"],
    ["check", "nope"],
])
def test_usage_errors_exit_one(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        sys.exit(cli.main(argv))
    assert exc.value.code == 1


def test_nothing_to_postselect_message():
    res = run("protocol", "--lambda-t", "0")
    assert res.returncode == 1
    assert "nothing to post-select" in res.stderr


@pytest.mark.parametrize("text, value", [("3", 3), ("1+2i", 1 + 2j), ("0.5-0.2j", 0.5 - 0.2j), ("2i", 2j), ("-1.5", -1.5)])
def test_parse_alpha(text, value):
    assert cli.parse_alpha(text) == value


def test_state_ltcs_quadratures_equal(capsys):
    assert cli.main(["state", "ltcs", "--alpha", "3.1623", "--order", "5"]) == 0
    fields = dict(ln.split(": ", 1) for ln in capsys.readouterr().out.splitlines())
    assert float(fields["var_x"]) == pytest.approx(float(fields["var_p"]), abs=1e-10)
    assert float(fields["mandel_q"]) < 0


def test_state_coherent_vacuum_dump(tmp_path, capsys):
    path = tmp_path / "vac.txt"
    assert cli.main(["state", "coherent", "--alpha", "0", "--out", str(path)]) == 0
    assert np.array_equal(fock.load(path).amplitudes, [1.0])
    assert "mandel_q: undefined" in capsys.readouterr().out


def test_state_dpacs_k0_dump_equals_pacs(tmp_path):
    a, b = tmp_path / "d.txt", tmp_path / "p.txt"
    assert cli.main(["state", "dpacs", "--k", "0", "--order", "3", "--alpha", "1.5", "--out", str(a)]) == 0
    assert cli.main(["state", "pacs", "--order", "3", "--alpha", "1.5", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("family", ["utcs", "bernoulli", "bdisp"])
def test_state_families_run(family, capsys):
    assert cli.main(["state", family, "--alpha", "1+1i", "--order", "3", "--k", "0.5"]) == 0
    assert f"family: {family}" in capsys.readouterr().out


def test_protocol_report(capsys):
    assert cli.main(["protocol", "--steps", "4", "--lambda-t", "1e-3", "--k", "1"]) == 0
    fields = dict(ln.split(": ", 1) for ln in capsys.readouterr().out.splitlines())
    probs = [float(p) for p in fields["per_step_success_prob"].split()]
    assert len(probs) == 4
    assert float(fields["cumulative_success_prob"]) == pytest.approx(math.prod(probs), rel=1e-11)


def test_protocol_single_step_fidelity(capsys):
    assert cli.main(["protocol", "--steps", "1", "--lambda-t", "1e-3", "--k", "1"]) == 0
    fields = dict(ln.split(": ", 1) for ln in capsys.readouterr().out.splitlines())
    assert float(fields["fidelity_vs_analytic"]) >= 1 - 1e-6


@pytest.mark.parametrize("argv", [["check", "decomposition"], ["check", "identity", "--order", "0"], ["check", "closed-forms"]])
def test_checks_pass(argv, capsys):
    assert cli.main(argv) == 0
    assert "PASS" in capsys.readouterr().out


def test_closed_forms_prints_discrepancies(capsys):
    cli.main(["check", "closed-forms"])
    out = capsys.readouterr().out
    line = next(ln for ln in out.splitlines() if "printed ltcs variance" in ln)
    assert float(line.rsplit(" ", 1)[1]) > 0


def test_check_tolerance_failure_exit_code(monkeypatch, capsys):
    monkeypatch.setitem(cli.checks.SUITES, "decomposition", lambda: cli.checks.CheckResult("x", 1.0, 1e-10))
    assert cli.main(["check", "decomposition"]) == cli.EXIT_TOLERANCE


def test_sweep_table_validation():
    with pytest.raises(ValueError):
        sweeps.SweepTable(["a", "b"], [(1.0,)])
    with pytest.raises(ValueError):
        sweeps.SweepTable(["a"], [(float("nan"),)])


def test_unknown_figure_and_override():
    with pytest.raises(KeyError):
        sweeps.cmd_fig("fig0")
    with pytest.raises(TypeError):
        sweeps.cmd_fig("fig5", grid=3)


@pytest.mark.parametrize("fig", sorted(sweeps.FIGURES))
def test_default_figures_shape(fig):
    table = sweeps.cmd_fig(fig)
    expected_rows = {"fig1": 101, "fig2": 31, "fig3": 2048, "fig4": 2048, "fig5": 41, "fig6": 11, "fig7": 41}
    assert len(table.rows) == expected_rows[fig]
