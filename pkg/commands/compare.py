# commands/compare.py
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import click

from config import settings
from errors import ConfigError
from schemas.report import CompareReport, KindSummary
from schemas.scenario import FilterKind, Scenario
from sim.metrics import compute_metrics, compute_verdicts
from sim.runners import run_scenario
from sim.trajectory import TrajectoryLog, merge_trajectories
from utils.scenario_io import atomic_write_text, load_scenario, scenario_from_dict, write_json
from commands.run import dt_option, duration_option, out_option, scenario_argument, set_option

logger = logging.getLogger(__name__)

_KIND_NAMES = [k.value for k in FilterKind]


def scenario_for_kind(sc: Scenario, kind: FilterKind) -> Scenario:
    """Same scenario with filter.kind replaced, revalidated."""
    raw = sc.model_dump(mode="json")
    raw["filter"]["kind"] = kind.value
    raw["name"] = f"{sc.name}.{kind.value}"
    return scenario_from_dict(raw)


def metrics_table(report: CompareReport) -> str:
    cols = ("min_h", "goal_error_final", "control_rate_max", "velocity_tracking_rms")
    lines = ["kind".ljust(18) + "".join(c.rjust(24) for c in cols)]
    for kind in report.kinds:
        m = report.results[kind.value].metrics
        cells = []
        for c in cols:
            v = getattr(m, c)
            cells.append(("-" if v is None else f"{v:.6e}").rjust(24))
        lines.append(kind.value.ljust(18) + "".join(cells))
    return "\n".join(lines)


def execute_compare(sc: Scenario, kinds: Sequence[FilterKind], out_dir: Path, workers: Optional[int] = None) -> CompareReport:
    if len(kinds) < 2:
        raise ConfigError(f"compare needs at least two filter kinds, got {len(kinds)}")
    if len(set(kinds)) != len(kinds):
        raise ConfigError("compare: filter kinds must be distinct")
    variants = [scenario_for_kind(sc, k) for k in kinds]

    with ThreadPoolExecutor(max_workers=workers or settings.COMPARE_WORKERS) as pool:
        logs: List[TrajectoryLog] = list(pool.map(run_scenario, variants))

    by_kind: Dict[str, TrajectoryLog] = {k.value: log for k, log in zip(kinds, logs)}
    csv_path = atomic_write_text(out_dir / "comparison.csv", merge_trajectories(by_kind))
    report = CompareReport(
        scenario=sc,
        kinds=list(kinds),
        results={
            k.value: KindSummary(kind=k, metrics=compute_metrics(log), verdicts=compute_verdicts(log))
            for k, log in zip(kinds, logs)
        },
        comparison_csv=str(csv_path),
        comparison_json=str(out_dir / "comparison.json"),
    )
    write_json(report.comparison_json, report)
    logger.info("wrote %s and %s", report.comparison_csv, report.comparison_json)
    return report


@click.command("compare")
@scenario_argument
@click.option(
    "--kind", "kinds", multiple=True, required=True,
    type=click.Choice(_KIND_NAMES), help="Filter kind to run (repeat, at least twice).",
)
@out_option
@set_option
@dt_option
@duration_option
@click.pass_context
def command(
    ctx: click.Context,
    scenario: str,
    kinds: Tuple[str, ...],
    out_dir: Path,
    overrides: Tuple[str, ...],
    dt: Optional[float],
    duration: Optional[float],
):
    """Run SCENARIO once per filter kind and write a merged comparison."""
    sc = load_scenario(scenario, overrides, dt=dt, duration=duration)
    report = execute_compare(sc, [FilterKind(k) for k in kinds], out_dir)
    click.echo(metrics_table(report))
    if not report.passed:
        ctx.exit(1)
