"""Application configuration: defaults, JSON config file, environment
overrides (RULEBRIDGE_* variables win over the file)."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .errors import DataFormatError
from .pipeline import COMBINED, DEFAULT_THRESHOLD, DEFAULT_TOP_N, METHODS

ENV_PREFIX = "RULEBRIDGE_"

_INT_KEYS = {"top_n", "port"}
_FLOAT_KEYS = {"threshold"}


@dataclass(frozen=True)
class AppConfig:
    recipes_path: str | None = None
    ontology_path: str | None = None
    catalog_dir: str = "data/prepared"
    vectors_path: str | None = None
    threshold: float = DEFAULT_THRESHOLD
    top_n: int = DEFAULT_TOP_N
    method: str = COMBINED
    entailment_backend: str = "proxy"
    entailment_endpoint: str | None = None
    store_path: str = "data/rules.jsonl"
    results_path: str | None = None
    ui_dir: str | None = None
    host: str = "127.0.0.1"
    port: int = 8000
    remote_container: str | None = None
    remote_token: str | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise DataFormatError(f"method must be one of {METHODS}: {self.method!r}")
        if self.entailment_backend not in ("proxy", "remote"):
            raise DataFormatError(
                f"entailment_backend must be 'proxy' or 'remote': {self.entailment_backend!r}"
            )
        if not 0.0 <= self.threshold <= 1.0:
            raise DataFormatError(f"threshold out of range [0, 1]: {self.threshold}")
        if self.top_n < 1:
            raise DataFormatError(f"top_n must be >= 1: {self.top_n}")

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _coerce(key: str, raw: str):
    if key in _INT_KEYS:
        try:
            return int(raw)
        except ValueError as exc:
            raise DataFormatError(f"{ENV_PREFIX}{key.upper()}: not an integer: {raw!r}") from exc
    if key in _FLOAT_KEYS:
        try:
            return float(raw)
        except ValueError as exc:
            raise DataFormatError(f"{ENV_PREFIX}{key.upper()}: not a number: {raw!r}") from exc
    return raw


def load_config(path: str | Path | None = None, env: dict | None = None) -> AppConfig:
    """Build an AppConfig from defaults, then a JSON file, then environment
    variables named RULEBRIDGE_<FIELD>."""
    environ = os.environ if env is None else env
    known = {f.name for f in fields(AppConfig)}
    values: dict = {}

    if path is not None:
        file_path = Path(path)
        if not file_path.exists():
            raise DataFormatError(f"config file not found: {file_path}")
        try:
            payload = json.loads(file_path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise DataFormatError(f"config file is not valid JSON: {file_path}") from exc
        if not isinstance(payload, dict):
            raise DataFormatError(f"config file must hold a JSON object: {file_path}")
        unknown = set(payload) - known
        if unknown:
            raise DataFormatError(f"unknown config keys: {sorted(unknown)}")
        values.update(payload)

    for key in known:
        raw = environ.get(ENV_PREFIX + key.upper())
        if raw is not None:
            values[key] = _coerce(key, raw)

    try:
        return AppConfig(**values)
    except TypeError as exc:
        raise DataFormatError(f"bad config value: {exc}") from exc


def override(config: AppConfig, **updates) -> AppConfig:
    """Return a copy with the given fields replaced (None values ignored)."""
    actual = {k: v for k, v in updates.items() if v is not None}
    return replace(config, **actual) if actual else config
