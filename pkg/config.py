# config.py
from pathlib import Path
from typing import Optional
import os
from dotenv import load_dotenv

load_dotenv()


def _to_int(v: Optional[str], default: int) -> int:
    if v is None or not v.strip():
        return default
    return int(v)


class Settings:
    # --- operational (environment) ---
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO").strip().upper()
    COMPARE_WORKERS: int = _to_int(os.getenv("COMPARE_WORKERS"), 4)

    # --- numeric tolerances ---
    GRAD_TOL: float = 1e-9      # ‖pos − center‖ below this has no barrier gradient
    A_TOL: float = 1e-9         # ‖L_g h‖ below this violates relative degree one
    SNAP_TOL: float = 1e-9      # distance to a transition join treated as "on the join"
    INV_TOL: float = 1e-6       # invariance slack on h
    THRUST_TOL: float = 1e-9    # free-fall guard for the attitude extraction
    PSI_MAX: float = 1e12

    # --- simulation defaults ---
    DEFAULT_DT: float = 1e-3
    DEFAULT_MASS: float = 1.0
    DEFAULT_INERTIA: float = 0.1
    DEFAULT_GRAVITY: float = 9.81

    # --- output ---
    CSV_DIGITS: int = 17
    SCENARIO_DIR: Path = Path(__file__).resolve().parent / "scenarios"


settings = Settings()
