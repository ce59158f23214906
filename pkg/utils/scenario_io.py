# utils/scenario_io.py
from __future__ import annotations

import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Iterable, List, Optional, Tuple

import yaml
from pydantic import ValidationError

from config import settings
from errors import ConfigError
from schemas.scenario import Scenario

logger = logging.getLogger(__name__)


def bundled_scenarios() -> List[str]:
    return sorted(p.stem for p in settings.SCENARIO_DIR.glob("*.yaml"))


def resolve_scenario_path(name_or_path: str | Path) -> Path:
    """A path as given, else a bundled scenario by name (with or without .yaml)."""
    p = Path(name_or_path)
    if p.is_file():
        return p
    stem = p.name[:-5] if p.name.endswith(".yaml") else p.name
    bundled = settings.SCENARIO_DIR / f"{stem}.yaml"
    if bundled.is_file():
        return bundled
    raise ConfigError(f"scenario file not found: {name_or_path} (bundled: {', '.join(bundled_scenarios())})")


# ---------- overrides ----------
def parse_override(item: str) -> Tuple[List[str], Any]:
    key, sep, raw = item.partition("=")
    key = key.strip()
    if not sep or not key or any(not part for part in key.split(".")):
        raise ConfigError(f"override must look like dotted.key=value, got {item!r}")
    try:
        value = yaml.safe_load(raw) if raw.strip() else None
    except yaml.YAMLError as e:
        raise ConfigError(f"override {key}: value is not valid YAML ({e})") from e
    return key.split("."), value


def _child(node: Any, part: str, key: str, create: bool) -> Any:
    if isinstance(node, list):
        try:
            return node[int(part)]
        except (ValueError, IndexError) as e:
            raise ConfigError(f"override {key}: no list entry {part!r}") from e
    if isinstance(node, dict):
        if part not in node and create:
            node[part] = {}
        if part in node:
            return node[part]
    raise ConfigError(f"override {key}: {part!r} does not name a section")


def apply_overrides(raw: dict, overrides: Iterable[str]) -> dict:
    """Set dotted keys on the parsed document, before validation."""
    for item in overrides:
        path, value = parse_override(item)
        key = ".".join(path)
        node = raw
        for part in path[:-1]:
            node = _child(node, part, key, create=True)
        last = path[-1]
        if isinstance(node, list):
            try:
                node[int(last)] = value
            except (ValueError, IndexError) as e:
                raise ConfigError(f"override {key}: no list entry {last!r}") from e
        elif isinstance(node, dict):
            node[last] = value
        else:
            raise ConfigError(f"override {key}: parent is not a section")
        logger.debug("override %s = %r", key, value)
    return raw


# ---------- validation ----------
def format_validation_error(e: ValidationError) -> str:
    lines = []
    for err in e.errors():
        loc = ".".join(str(p) for p in err["loc"]) or "<root>"
        msg = err["msg"]
        if msg.startswith("Value error, "):
            msg = msg[len("Value error, "):]
        lines.append(f"{loc}: {msg}")
    return "; ".join(lines)


def scenario_from_dict(raw: Any) -> Scenario:
    if not isinstance(raw, dict):
        raise ConfigError("scenario file must be a mapping at the top level")
    try:
        return Scenario.model_validate(raw)
    except ValidationError as e:
        raise ConfigError(format_validation_error(e)) from e


def load_scenario(
    name_or_path: str | Path,
    overrides: Iterable[str] = (),
    dt: Optional[float] = None,
    duration: Optional[float] = None,
) -> Scenario:
    path = resolve_scenario_path(name_or_path)
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as e:
        raise ConfigError(f"{path}: not valid YAML ({e})") from e
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: scenario file must be a mapping at the top level")
    raw.setdefault("name", path.stem)
    apply_overrides(raw, overrides)
    if dt is not None:
        raw["dt"] = dt
    if duration is not None:
        raw["duration"] = duration
    sc = scenario_from_dict(raw)
    logger.debug("resolved scenario %s: %s", sc.name, sc.model_dump(mode="json"))
    return sc


def dump_scenario(sc: Scenario) -> str:
    """YAML text with every default resolved; loads back to an equal Scenario."""
    return yaml.safe_dump(sc.model_dump(mode="json"), sort_keys=False, default_flow_style=None)


# ---------- atomic output ----------
def atomic_write_text(path: str | Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def write_json(path: str | Path, model) -> Path:
    return atomic_write_text(path, model.model_dump_json(indent=2) + "\n")
