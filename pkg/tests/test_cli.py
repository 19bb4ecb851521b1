import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from olgrecycle.cli import dumps, main, parse_grid
from olgrecycle.errors import ParameterError, ScenarioError
from olgrecycle.scenario import parse_scenario

BASELINE = """\
# reference scenario
alpha = 0.5
tau = 0.5
beta = 0.2
gamma = 1
mu = 0.2
z = 0.1
theta = 0.5
eta = 1
xi = 0.2
phi = 1
epsilon = 1
rho = 2
a_tfp = 1
"""

# phi*gamma*eps = 0.5, delta = 1/3
HALF = BASELINE.replace("epsilon = 1", "epsilon = 0.5").replace("rho = 2", "rho = 1")


@pytest.fixture
def scenario(tmp_path):
    def write(text=BASELINE, name="s.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


def test_parse_defaults():
    sc = parse_scenario(BASELINE)
    assert sc.params.beta == 0.2
    assert sc.k0 == 0.01
    assert sc.initial_pollution == pytest.approx(1.25)
    assert sc.max_periods == 10_000 and sc.tol == 1e-12


@pytest.mark.parametrize(
    "text, exc, msg",
    [
        (BASELINE + "r = 1\n", ScenarioError, "unknown key 'r'"),
        (BASELINE.replace("xi = 0.2\n", ""), ScenarioError, "missing parameter"),
        (BASELINE + "alpha = 0.4\n", ScenarioError, "duplicate"),
        (BASELINE + "just text\n", ScenarioError, "expected 'name = value'"),
        (BASELINE.replace("tau = 0.5", "tau = 0"), ParameterError, r"tau must be in \(0,1\]"),
        (BASELINE.replace("mu = 0.2", "mu = abc"), ScenarioError, "mu must be a number"),
        (BASELINE + "k0 = -1\n", ParameterError, "k0"),
        (BASELINE + "max_periods = 2.5\n", ScenarioError, "max_periods"),
    ],
)
def test_parse_errors(text, exc, msg):
    with pytest.raises(exc, match=msg):
        parse_scenario(text)


def test_inline_comments_and_optional_keys():
    sc = parse_scenario(BASELINE + "k0 = 0.5  # start high\np0 = 3\nmax_periods = 20\ntol = 1e-9\n")
    assert (sc.k0, sc.p0, sc.max_periods, sc.tol) == (0.5, 3.0, 20, 1e-9)


def test_validate_round_trip(scenario, tmp_path):
    code, text = run(["validate", "--scenario", scenario()])
    assert code == 0
    again = tmp_path / "again.txt"
    again.write_text(text)
    assert run(["validate", "--scenario", str(again)])[1] == text
    assert run(["steady", "--scenario", str(again)])[1] == run(["steady", "--scenario", scenario()])[1]


def test_validate_rejects_zero_tax(scenario, capsys):
    code, _ = run(["validate", "--scenario", scenario(BASELINE.replace("tau = 0.5", "tau = 0"))])
    assert code == 1
    err = capsys.readouterr().err
    assert "tau" in err and len(err.strip().splitlines()) == 1


def test_missing_scenario_file(tmp_path, capsys):
    assert run(["steady", "--scenario", str(tmp_path / "nope.txt")])[0] == 1
    assert "cannot read" in capsys.readouterr().err


def test_usage_errors_exit_one(scenario):
    assert run(["steady"])[0] == 1
    assert run(["frobnicate", "--scenario", scenario()])[0] == 1


def test_steady_json(scenario):
    code, text = run(["steady", "--scenario", scenario()])
    d = json.loads(text)
    assert code == 0
    assert list(d) == ["p_star", "h_star", "k_star", "y_star", "w_star", "u_star", "c1_star", "c2_star"]
    assert d["p_star"] == pytest.approx(1.25, rel=1e-15)
    assert d["h_star"] == pytest.approx(2.0, rel=1e-15)


def test_steady_full_tax_is_numeric_failure(scenario):
    assert run(["steady", "--scenario", scenario(BASELINE.replace("tau = 0.5", "tau = 1"))])[0] == 2


def test_thresholds(scenario):
    code, text = run(["thresholds", "--scenario", scenario(HALF)])
    d = json.loads(text)
    assert code == 0
    assert d["regime"] == "III"
    assert d["beta_hat"] == pytest.approx(0.5, abs=1e-15)
    assert set(d) == {"tau_cutoff_y", "tau_cutoff_u", "beta_hat", "beta_hat_u", "regime", "gap"}


def test_simulate_writes_csv(scenario, tmp_path):
    out = tmp_path / "traj.csv"
    code, text = run(["simulate", "--scenario", scenario(), "--out", str(out)])
    assert code == 0
    assert text.startswith("converged=true periods=")
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["t", "k", "P", "h", "y", "w", "R", "c1", "s"]
    # default p0 is the analytic stock, so pollution never moves
    assert {r[2] for r in rows[1:]} == {"1.25"}


def test_simulate_overrides(scenario, tmp_path):
    out = tmp_path / "traj.csv"
    code, text = run(["simulate", "--scenario", scenario(), "--out", str(out), "--max-periods", "3", "--tol", "1e-30"])
    assert text.strip().startswith("converged=false periods=3 ")
    assert len(out.read_text().splitlines()) == 5


def test_simulate_json_and_stdout(scenario, capsys):
    code, text = run(["simulate", "--scenario", scenario(), "--json"])
    d = json.loads(text)
    assert d["converged"] is True and d["final"]["P"] == pytest.approx(1.25)
    code, text = run(["simulate", "--scenario", scenario(), "--max-periods", "2"])
    assert text.splitlines()[0] == "t,k,P,h,y,w,R,c1,s"
    assert "converged=false" in capsys.readouterr().err


def test_sweep(scenario, tmp_path):
    out = tmp_path / "sweep.csv"
    code, _ = run(["sweep", "--scenario", scenario(), "--param", "beta", "--grid", "0:0.9:10", "--out", str(out)])
    assert code == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["value", "y_star", "u_star", "w_star", "h_star", "p_star", "dy_dbeta", "du_dbeta"]
    assert len(rows) == 11
    assert [float(r[0]) for r in rows[1:]] == pytest.approx([i / 10 for i in range(10)])


def test_sweep_subset_json(scenario):
    code, text = run(["sweep", "--scenario", scenario(), "--param", "tau", "--grid", "0.2:0.8:3",
                      "--outputs", "y_star,p_star", "--json"])
    rows = json.loads(text)
    assert [list(r) for r in rows] == [["value", "y_star", "p_star"]] * 3


@pytest.mark.parametrize(
    "extra, code",
    [
        (["--param", "beta", "--grid", "0:1:5"], 1),  # beta = 1 is outside [0,1)
        (["--param", "nope", "--grid", "0:0.5:5"], 1),
        (["--param", "beta", "--grid", "0:0.5:1"], 1),
        (["--param", "beta"], 1),
        (["--param", "tau", "--grid", "0.5:1:3"], 2),  # welfare undefined at tau = 1
    ],
)
def test_sweep_failures_leave_no_file(scenario, tmp_path, extra, code):
    out = tmp_path / "sweep.csv"
    assert run(["sweep", "--scenario", scenario(), "--out", str(out)] + extra)[0] == code
    assert not out.exists()


def test_optimize_audit(scenario):
    code, text = run(["optimize", "--scenario", scenario(HALF)])
    d = json.loads(text)
    assert list(d) == ["argmax_y", "beta_hat", "argmax_u", "beta_hat_u", "max_abs_gap"]
    assert d["max_abs_gap"] <= 1e-6


def test_regimes(scenario, tmp_path):
    out = tmp_path / "regimes.csv"
    code, text = run(["regimes", "--scenario", scenario(HALF), "--json", "--out", str(out)])
    d = json.loads(text)
    assert d["tau_cutoff_y"] == pytest.approx(0.2, rel=1e-14)
    assert d["max_abs_diff"] <= 1e-12
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["tau", "regime_numeric", "regime_analytic"]
    assert all(r[1] == r[2] for r in rows[1:])
    code, text = run(["regimes", "--scenario", scenario(HALF)])
    assert text.splitlines()[0].startswith("boundary=I|II numeric=")


def test_regimes_without_feedback(scenario):
    code, text = run(["regimes", "--scenario", scenario(BASELINE.replace("phi = 1", "phi = 0")), "--json"])
    d = json.loads(text)
    assert d["boundary_u"] is None and d["max_abs_diff"] is None


def test_low_pollution_warning_on_stderr(scenario, capsys):
    code, _ = run(["steady", "--scenario", scenario(BASELINE.replace("z = 0.1", "z = 0.01"))])
    assert code == 0
    assert "warning: steady-state pollution" in capsys.readouterr().err


def test_dumps_formatting():
    assert dumps({"a": 0.1, "b": [1, None, True], "c": "III"}) == '{"a": 0.10000000000000001, "b": [1, null, true], "c": "III"}'
    assert parse_grid("0:1:3") == [0.0, 0.5, 1.0]


def test_module_entry_point_is_deterministic(tmp_path):
    scen = tmp_path / "s.txt"
    scen.write_text(HALF)
    cmd = [sys.executable, "-m", "olgrecycle", "optimize", "--scenario", str(scen)]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


def test_shipped_scenarios_validate():
    root = Path(__file__).resolve().parents[1] / "scenarios"
    for path in sorted(root.glob("*.txt")):
        assert run(["validate", "--scenario", str(path)])[0] == 0, path
