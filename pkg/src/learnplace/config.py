"""Service configuration: a small dataclass loadable from a JSON file."""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from pathlib import Path

from .errors import BadConfig


@dataclass
class ServiceConfig:
    port: int = 8000
    data_dir: str = "data"
    pass_threshold: float = 50.0
    default_k: int = 5


def validate_config(config: ServiceConfig) -> ServiceConfig:
    if not isinstance(config.port, int) or isinstance(config.port, bool) or not 1 <= config.port <= 65535:
        raise BadConfig("port", "port must be an integer in 1..65535")
    if not isinstance(config.data_dir, str) or not config.data_dir.strip():
        raise BadConfig("data_dir", "data_dir must be a non-empty path")
    if (
        not isinstance(config.pass_threshold, (int, float))
        or isinstance(config.pass_threshold, bool)
        or not 0.0 <= float(config.pass_threshold) <= 100.0
    ):
        raise BadConfig("pass_threshold", "pass_threshold must be in [0, 100]")
    config.pass_threshold = float(config.pass_threshold)
    if not isinstance(config.default_k, int) or isinstance(config.default_k, bool) or config.default_k < 1:
        raise BadConfig("default_k", "default_k must be an integer >= 1")
    return config


def load_config(path: str | Path) -> ServiceConfig:
    """Read config JSON with keys {port, data_dir, pass_threshold, default_k}."""
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise BadConfig("path", f"cannot read config file: {exc}")
    except json.JSONDecodeError as exc:
        raise BadConfig("path", f"config file is not valid JSON: {exc}")
    if not isinstance(payload, dict):
        raise BadConfig("path", "config file must hold a JSON object")
    known = {f.name for f in fields(ServiceConfig)}
    for key in payload:
        if key not in known:
            raise BadConfig(key, f"unknown config key: {key}")
    return validate_config(ServiceConfig(**payload))
