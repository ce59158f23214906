# tests/test_cli.py
import json

import numpy as np
import pytest
import yaml
from click.testing import CliRunner

from commands.compare import execute_compare, scenario_for_kind
from commands.eval import parse_state
from errors import ConfigError
from main import cli
from models.nominal import ProportionalNominal
from schemas.scenario import FilterKind
from sim.integrator import rk4_step
from sim.trajectory import read_trajectory_csv
from utils.scenario_io import (
    apply_overrides,
    bundled_scenarios,
    dump_scenario,
    load_scenario,
    parse_override,
    scenario_from_dict,
)


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def _invoke(runner, *args):
    return runner.invoke(cli, list(args), catch_exceptions=False)


# ---------- run ----------
def test_run_bundled_scenario(runner, tmp_path):
    result = _invoke(runner, "run", "single_integrator_penalty", "--out", str(tmp_path), "--duration", "1.0")
    assert result.exit_code == 0, result.output
    assert "PASS forward_invariance" in result.stdout
    report = json.loads((tmp_path / "single_integrator_penalty.report.json").read_text())
    assert report["metrics"]["violations"] == 0
    assert report["scenario"]["filter"]["kind"] == "Penalty"
    log = read_trajectory_csv(tmp_path / "single_integrator_penalty.csv", [4.0, 0.0])
    assert len(log) == 1001


def test_run_invalid_gate_band(runner, tmp_path):
    result = _invoke(runner, "run", "single_integrator_gated", "--out", str(tmp_path), "--set", "filter.gate.delta=0.05")
    assert result.exit_code == 2
    assert "GateParams" in result.stderr
    assert not any(tmp_path.iterdir())


def test_run_feedforward_needs_smooth_filter(runner, tmp_path):
    result = _invoke(runner, "run", "drone_feedforward", "--out", str(tmp_path), "--set", "filter.kind=ClassicalQP")
    assert result.exit_code == 2
    assert "feedforward requires a smooth filter" in result.stderr


def test_run_unknown_scenario(runner, tmp_path):
    result = _invoke(runner, "run", "no_such_scenario", "--out", str(tmp_path))
    assert result.exit_code == 2
    assert "scenario file not found" in result.stderr
    assert "single_integrator_penalty" in result.stderr


def test_run_start_at_obstacle_center(runner, tmp_path):
    result = _invoke(
        runner, "run", "single_integrator_penalty", "--out", str(tmp_path),
        "--set", "x0=[0.0, 0.0]", "--duration", "0.01",
    )
    assert result.exit_code == 3
    assert "t=0.000000" in result.stderr
    assert "DegenerateGradient" in result.stderr


def test_run_unrecovered_start_fails_verdict(runner, tmp_path):
    result = _invoke(runner, "run", "outside_start", "--out", str(tmp_path), "--duration", "0.01")
    assert result.exit_code == 1
    assert "FAIL set_recovery" in result.stdout
    assert (tmp_path / "outside_start.report.json").is_file()


def test_run_bad_override_syntax(runner, tmp_path):
    result = _invoke(runner, "run", "single_integrator_penalty", "--out", str(tmp_path), "--set", "gains.k")
    assert result.exit_code == 2


# ---------- eval ----------
def test_eval_far_state(runner):
    result = _invoke(runner, "eval", "single_integrator_penalty", "--state", "-4.0,0.2")
    assert result.exit_code == 0, result.output
    out = json.loads(result.stdout)
    assert out["correction_norm"] == 0.0
    assert out["constraint_active"] is False
    np.testing.assert_allclose(out["u_star"], [4.0, -0.1])


def test_eval_near_obstacle(runner):
    result = _invoke(runner, "eval", "single_integrator_gated", "--state", "[-1.2, 0.0]")
    assert result.exit_code == 0, result.output
    out = json.loads(result.stdout)
    assert out["h"] == pytest.approx(0.0, abs=1e-12)
    assert out["residual"] >= -1e-9


def test_eval_is_deterministic(runner):
    first = _invoke(runner, "eval", "single_integrator_penalty", "--state", "-1.5,0.4")
    second = _invoke(runner, "eval", "single_integrator_penalty", "--state", "-1.5,0.4")
    assert first.stdout == second.stdout


def test_eval_wrong_dimension(runner):
    result = _invoke(runner, "eval", "double_integrator_feedforward", "--state", "1.0,2.0")
    assert result.exit_code == 2
    assert "expected 4 entries" in result.stderr


def test_parse_state_forms():
    np.testing.assert_array_equal(parse_state("1, 2", 2), [1.0, 2.0])
    np.testing.assert_array_equal(parse_state("[1.5, -2]", 2), [1.5, -2.0])
    with pytest.raises(ConfigError):
        parse_state("1, nan", 2)
    with pytest.raises(ConfigError):
        parse_state("a, b", 2)


# ---------- compare ----------
def test_compare_needs_two_kinds(runner, tmp_path):
    result = _invoke(runner, "compare", "transit_classical_qp", "--kind", "Penalty", "--out", str(tmp_path))
    assert result.exit_code == 2
    assert "at least two" in result.stderr


def test_compare_rejects_duplicates(bundled, tmp_path):
    with pytest.raises(ConfigError):
        execute_compare(bundled("transit_classical_qp"), [FilterKind.PENALTY, FilterKind.PENALTY], tmp_path)


def test_scenario_for_kind_renames(bundled):
    sc = scenario_for_kind(bundled("transit_classical_qp"), FilterKind.PENALTY)
    assert sc.filter.kind is FilterKind.PENALTY
    assert sc.name == "transit_classical_qp.Penalty"


def test_compare_outputs(runner, tmp_path):
    result = _invoke(
        runner, "compare", "transit_classical_qp", "--kind", "ClassicalQP", "--kind", "Penalty",
        "--out", str(tmp_path), "--duration", "2.0",
    )
    assert result.exit_code == 0, result.output
    header = (tmp_path / "comparison.csv").read_text().splitlines()[0].split(",")
    assert header[0] == "t"
    assert "ClassicalQP.x1" in header and "Penalty.x1" in header
    report = json.loads((tmp_path / "comparison.json").read_text())
    assert list(report["results"]) == ["ClassicalQP", "Penalty"]


@pytest.mark.slow
def test_compare_perception_matches_nominal(bundled, tmp_path):
    sc = bundled("perception_far_obstacle")
    report = execute_compare(sc, [FilterKind.GATED_QP, FilterKind.CLASSICAL_QP], tmp_path, workers=2)
    assert report.passed

    nominal = ProportionalNominal(goal=np.asarray(sc.goal), k=sc.gains.k)
    x = np.asarray(sc.x0, dtype=float)
    for k in range(sc.steps):
        x = rk4_step(lambda t, y: nominal(y), k * sc.dt, x, sc.dt)
    for kind in ("GatedQP", "ClassicalQP"):
        final = report.results[kind].metrics.goal_error_final
        assert final == pytest.approx(np.linalg.norm(x - sc.goal), abs=1e-12)


@pytest.mark.slow
def test_compare_transit_smoothness_ordering(bundled, tmp_path):
    report = execute_compare(bundled("transit_classical_qp"), [FilterKind.CLASSICAL_QP, FilterKind.PENALTY], tmp_path)
    qp, pen = report.results["ClassicalQP"].metrics, report.results["Penalty"].metrics
    assert pen.control_rate_max <= qp.control_rate_max
    assert pen.control_accel_max < qp.control_accel_max
    assert qp.violations == 0 and pen.violations == 0


# ---------- scenario loading ----------
@pytest.mark.parametrize(
    "name",
    ["single_integrator_penalty", "multi_obstacle", "double_integrator_feedforward", "drone_no_feedforward_high_gain"],
)
def test_scenario_dump_reloads_equal(bundled, name):
    sc = bundled(name)
    assert scenario_from_dict(yaml.safe_load(dump_scenario(sc))) == sc


def test_scenario_equality_after_weight_matrix_use(bundled):
    first, second = bundled("transit_classical_qp"), bundled("transit_classical_qp")
    assert first.filter.weight_matrix is not second.filter.weight_matrix
    assert first == second
    assert first != bundled("transit_classical_qp", "filter.weight=[[2.0, 0.0], [0.0, 1.0]]")


def test_bundled_scenarios_lists_scenario_dir():
    names = bundled_scenarios()
    assert names == sorted(names)
    assert {"single_integrator_penalty", "transit_classical_qp", "drone_feedforward"} <= set(names)


def test_override_parsing():
    assert parse_override("filter.gate.delta=0.5") == (["filter", "gate", "delta"], 0.5)
    assert parse_override("x0=[1, 2]") == (["x0"], [1, 2])
    with pytest.raises(ConfigError):
        parse_override("=3")
    with pytest.raises(ConfigError):
        parse_override("a..b=1")


def test_override_list_index():
    raw = {"obstacles": [{"center": [0.0, 0.0]}]}
    apply_overrides(raw, ["obstacles.0.center=[1.0, 2.0]"])
    assert raw["obstacles"][0]["center"] == [1.0, 2.0]
    with pytest.raises(ConfigError):
        apply_overrides(raw, ["obstacles.3.center=[0.0, 0.0]"])


def test_load_scenario_step_overrides():
    sc = load_scenario("single_integrator_penalty", dt=0.01, duration=0.5)
    assert sc.dt == 0.01
    assert sc.steps == 50
