# commands/run.py
from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional, Tuple

import click

from schemas.report import RunReport
from schemas.scenario import Scenario
from sim.metrics import compute_metrics, compute_verdicts
from sim.runners import run_scenario
from sim.trajectory import write_trajectory_csv
from utils.scenario_io import load_scenario, write_json

logger = logging.getLogger(__name__)

scenario_argument = click.argument("scenario")
set_option = click.option(
    "--set", "overrides", multiple=True, metavar="KEY=VALUE",
    help="Dotted-key override applied before validation (repeatable).",
)
dt_option = click.option("--dt", type=float, default=None, help="Override the integration step.")
duration_option = click.option("--duration", type=float, default=None, help="Override the horizon T.")
out_option = click.option(
    "--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), default=Path("out"),
    show_default=True, help="Output directory.",
)


def execute_run(sc: Scenario, out_dir: Path) -> RunReport:
    log = run_scenario(sc)
    csv_path = write_trajectory_csv(out_dir / f"{sc.name}.csv", log)
    report = RunReport(
        scenario=sc,
        metrics=compute_metrics(log),
        verdicts=compute_verdicts(log),
        trajectory_path=str(csv_path),
        report_path=str(out_dir / f"{sc.name}.report.json"),
    )
    write_json(report.report_path, report)
    logger.info("wrote %s and %s", report.trajectory_path, report.report_path)
    return report


@click.command("run")
@scenario_argument
@out_option
@set_option
@dt_option
@duration_option
@click.pass_context
def command(
    ctx: click.Context,
    scenario: str,
    out_dir: Path,
    overrides: Tuple[str, ...],
    dt: Optional[float],
    duration: Optional[float],
):
    """Simulate SCENARIO (a file or a bundled name) and write trajectory + report."""
    sc = load_scenario(scenario, overrides, dt=dt, duration=duration)
    report = execute_run(sc, out_dir)
    m = report.metrics
    click.echo(f"{sc.name}: min_h={m.min_h:.6e} goal_error={m.goal_error_final:.6e} violations={m.violations}")
    for v in report.verdicts:
        click.echo(f"  {'PASS' if v.passed else 'FAIL'} {v.name} {v.detail}".rstrip())
    if not report.passed:
        ctx.exit(1)
