# sim/trajectory.py
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from config import settings
from utils.scenario_io import atomic_write_text


@dataclass
class TrajectoryLog:
    """Uniform-grid closed-loop record. Row k holds the state at times[k] and
    the control and filter diagnostics evaluated at that state."""

    times: np.ndarray            # (K,)
    states: np.ndarray           # (K, n)
    controls: np.ndarray         # (K, m)
    h: np.ndarray                # (K, N) one column per obstacle
    sigma: np.ndarray            # (K,)
    gate_or_psi: np.ndarray      # (K,)
    correction_norm: np.ndarray  # (K,)
    tracking_err: np.ndarray     # (K,) NaN where not applicable
    goal: np.ndarray
    u_star: Optional[np.ndarray] = field(default=None, repr=False)  # (K, 2), in-memory only

    def __len__(self) -> int:
        return len(self.times)

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0]) if len(self.times) > 1 else 0.0

    @property
    def min_h_per_step(self) -> np.ndarray:
        return self.h.min(axis=1)

    def header(self) -> List[str]:
        n, m, N = self.states.shape[1], self.controls.shape[1], self.h.shape[1]
        return (
            ["t"]
            + [f"x{i + 1}" for i in range(n)]
            + [f"u{i + 1}" for i in range(m)]
            + [f"h_{i + 1}" for i in range(N)]
            + ["sigma", "gate_or_psi", "correction_norm", "tracking_err"]
        )

    def rows(self) -> List[List[str]]:
        out = []
        for k in range(len(self)):
            values = (
                [self.times[k]]
                + list(self.states[k])
                + list(self.controls[k])
                + list(self.h[k])
                + [self.sigma[k], self.gate_or_psi[k], self.correction_norm[k], self.tracking_err[k]]
            )
            out.append([format_float(v) for v in values])
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header())
        writer.writerows(self.rows())
        return buf.getvalue()


def format_float(v: float) -> str:
    v = float(v)
    if math.isnan(v):
        return ""
    return f"{v:.{settings.CSV_DIGITS}g}"


def _parse(s: str) -> float:
    return float(s) if s != "" else math.nan


def parse_trajectory_csv(text: str, goal) -> TrajectoryLog:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    data = np.array([[_parse(s) for s in row] for row in reader if row], dtype=float)
    if data.size == 0:
        raise ValueError("trajectory CSV has no rows")

    def cols(prefix: str) -> List[int]:
        return [i for i, name in enumerate(header) if name.startswith(prefix) and name[len(prefix):].isdigit()]

    idx = {name: i for i, name in enumerate(header)}
    return TrajectoryLog(
        times=data[:, idx["t"]],
        states=data[:, cols("x")],
        controls=data[:, cols("u")],
        h=data[:, cols("h_")],
        sigma=data[:, idx["sigma"]],
        gate_or_psi=data[:, idx["gate_or_psi"]],
        correction_norm=data[:, idx["correction_norm"]],
        tracking_err=data[:, idx["tracking_err"]],
        goal=np.asarray(goal, dtype=float),
    )


def read_trajectory_csv(path: Path, goal) -> TrajectoryLog:
    return parse_trajectory_csv(Path(path).read_text(encoding="utf-8"), goal)


def write_trajectory_csv(path: Path, log: TrajectoryLog) -> Path:
    return atomic_write_text(path, log.to_csv())


def merge_trajectories(logs: Dict[str, TrajectoryLog]) -> str:
    """One CSV on the shared time grid; columns `t` then `<label>.<column>`."""
    labels = list(logs)
    first = logs[labels[0]]
    for label in labels[1:]:
        if not np.array_equal(logs[label].times, first.times):
            raise ValueError(f"{label}: time grid differs from {labels[0]}")
    header = ["t"] + [f"{label}.{col}" for label in labels for col in logs[label].header()[1:]]
    per_label = [logs[label].rows() for label in labels]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for k in range(len(first)):
        row = [per_label[0][k][0]]
        for rows in per_label:
            row.extend(rows[k][1:])
        writer.writerow(row)
    return buf.getvalue()
