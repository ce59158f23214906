# commands/eval.py
from __future__ import annotations

from typing import List, Tuple

import click
import numpy as np
import yaml

from commands.run import scenario_argument, set_option
from errors import ConfigError
from filters.pipeline import SafetyStack
from models.systems import STATE_DIM
from schemas.report import FilterOutputOut
from utils.scenario_io import load_scenario


def parse_state(text: str, n: int) -> np.ndarray:
    """'1.0,2.0' or '[1.0, 2.0]' into a length-n vector."""
    body = text.strip()
    if not body.startswith("["):
        body = f"[{body}]"
    try:
        values: List = yaml.safe_load(body)
        state = np.array([float(v) for v in values], dtype=float)
    except (yaml.YAMLError, TypeError, ValueError) as e:
        raise ConfigError(f"state: cannot read {text!r} as a vector") from e
    if state.size != n:
        raise ConfigError(f"state: expected {n} entries, got {state.size}")
    if not np.all(np.isfinite(state)):
        raise ConfigError("state: entries must be finite")
    return state


@click.command("eval")
@scenario_argument
@click.option("--state", "state_text", required=True, help="State vector, e.g. '0.5,1.8'.")
@set_option
def command(scenario: str, state_text: str, overrides: Tuple[str, ...]):
    """Evaluate the configured filter once and print the result as JSON."""
    sc = load_scenario(scenario, overrides)
    x = parse_state(state_text, STATE_DIM[sc.system])
    out = SafetyStack.from_scenario(sc).evaluate(x[:2])
    click.echo(FilterOutputOut.from_output(out).model_dump_json(indent=2))
