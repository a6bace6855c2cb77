import cmath
import json
import os
import subprocess

import pytest

import ratdyn


def test_step_and_equilibria():
    assert ratdyn.step(0, 0, 0.3, 0.5 + 0.2j) == 1
    first, second = ratdyn.equilibria(1, 1)
    values = sorted(complex(*e["value"]).real for e in (first, second))
    assert values == pytest.approx([-0.5, 1.0])
    for e in (first, second):
        z = complex(*e["value"])
        assert abs((1 + z) / (z + z) - z) < 1e-12


def test_iterate_reports_outcome():
    points, outcome = ratdyn.iterate(0, 0, 0.3, 0.5 + 0.2j, {"max_iters": 100, "transient_discard": 10})
    assert outcome["kind"] == "converged"
    assert all(p == 1 for p in points)


def test_two_cycle_row():
    c = ratdyn.two_cycle(0.78287 + 0.69378j, 0.019604 + 2.5296j)
    assert abs(c["phi"] - (0.00229 - 0.36314j)) < 1e-3
    assert abs(c["phi"] + c["psi"] - 1) < 1e-12
    assert c["stability"]["verdict"] == "locally_asymptotically_stable"


def test_margins_and_condition():
    assert ratdyn.stability_margin(-0.82781 + 0.224354j, 0.492467 - 0.333602j) == pytest.approx(1.66614, abs=1e-4)
    cc = ratdyn.condition_check(0.530797553008973 + 0.779167230102011j, 4.670053421145915 + 1.299062084737301j)
    assert cc["beta_gt"]


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        ratdyn.equilibria(1, -1)
    with pytest.raises(ValueError):
        ratdyn.two_cycle(0.5, 1)


def test_lyapunov_negative_at_stable_equilibrium():
    est = ratdyn.lyapunov_max(1, 1, 0.9, 1.1, 5000)
    assert est["lambda_max"] == pytest.approx(cmath.log(0.5).real, abs=0.05)


def test_run_cli_in_process():
    code, out, err = ratdyn.run_cli(["analyze", "--alpha", "1", "0", "--beta", "-1", "0"])
    assert code == 2
    assert "beta = -1" in err
    code, out, _ = ratdyn.run_cli(["period2", "--alpha", "1", "0", "--beta", "1", "1"])
    assert code == 0
    assert json.loads(out)["stability"]["verdict"] == "saddle"


@pytest.mark.skipif("RATDYN_CLI" not in os.environ, reason="CLI binary path not provided")
def test_cli_binary_exit_codes():
    cli = os.environ["RATDYN_CLI"]
    ok = subprocess.run([cli, "analyze", "--alpha", "1", "0", "--beta", "1", "0"], capture_output=True, text=True)
    assert ok.returncode == 0
    assert json.loads(ok.stdout)["command"] == "analyze"
    bad = subprocess.run([cli, "analyze", "--alpha", "1", "0", "--beta", "-1", "0"], capture_output=True, text=True)
    assert bad.returncode == 2
