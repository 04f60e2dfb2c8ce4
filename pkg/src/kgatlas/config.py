"""Service configuration: JSON file plus environment overrides.

Resolution order for every field: built-in default, then the config file,
then the environment variable. The packaged demo snapshot and corpus are
used when no paths are configured, so `kgatlas serve` works out of the box.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from kgatlas.errors import SnapshotFormatError

ENV_CONFIG = "KGATLAS_CONFIG"
ENV_HOST = "KGATLAS_HOST"
ENV_PORT = "KGATLAS_PORT"
ENV_SNAPSHOT = "KGATLAS_SNAPSHOT"
ENV_PROVIDER_MODE = "KGATLAS_PROVIDER_MODE"
ENV_CORPUS_DIR = "KGATLAS_CORPUS_DIR"
ENV_TIMEOUT_MS = "KGATLAS_TIMEOUT_MS"
ENV_MAX_LIMIT = "KGATLAS_MAX_LIMIT"
ENV_UI_DIR = "KGATLAS_UI_DIR"

SNAPSHOT_PATH_DEFAULT = "kgatlas-data.json"


@dataclass
class ProvidersConfig:
    mode: str = "mock"  # "mock" | "live"
    corpus_dir: str | None = None
    timeout_ms: float = 30_000
    max_limit: int = 500


@dataclass
class AppConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    snapshot_path: str = SNAPSHOT_PATH_DEFAULT
    providers: ProvidersConfig = field(default_factory=ProvidersConfig)
    ui_dir: str | None = None


def _config_error(message: str) -> SnapshotFormatError:
    return SnapshotFormatError(f"config: {message}")


def load_config(path: str | None = None) -> AppConfig:
    """Build the effective config from defaults, optional file, and environment."""
    config = AppConfig()
    file_path = path or os.environ.get(ENV_CONFIG)
    if file_path:
        try:
            raw = json.loads(Path(file_path).read_text(encoding="utf-8"))
        except FileNotFoundError as exc:
            raise _config_error(f"file not found: {file_path}") from exc
        except json.JSONDecodeError as exc:
            raise _config_error(f"invalid JSON in {file_path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise _config_error(f"{file_path} must hold a JSON object")
        config = _apply_file(config, raw)
    return _apply_env(config)


def _apply_file(config: AppConfig, raw: dict) -> AppConfig:
    known = {"host", "port", "snapshot_path", "providers", "ui_dir"}
    unknown = set(raw) - known
    if unknown:
        raise _config_error(f"unknown keys {sorted(unknown)}")
    if "host" in raw:
        config.host = str(raw["host"])
    if "port" in raw:
        config.port = _as_int("port", raw["port"])
    if "snapshot_path" in raw:
        config.snapshot_path = str(raw["snapshot_path"])
    if "ui_dir" in raw:
        config.ui_dir = str(raw["ui_dir"]) if raw["ui_dir"] is not None else None
    providers = raw.get("providers", {})
    if providers:
        if not isinstance(providers, dict):
            raise _config_error("providers must be an object")
        unknown = set(providers) - {"mode", "corpus_dir", "timeout_ms", "max_limit"}
        if unknown:
            raise _config_error(f"unknown provider keys {sorted(unknown)}")
        if "mode" in providers:
            config.providers.mode = _as_mode(providers["mode"])
        if "corpus_dir" in providers:
            value = providers["corpus_dir"]
            config.providers.corpus_dir = str(value) if value is not None else None
        if "timeout_ms" in providers:
            config.providers.timeout_ms = _as_number("timeout_ms", providers["timeout_ms"])
        if "max_limit" in providers:
            config.providers.max_limit = _as_int("max_limit", providers["max_limit"])
    return config


def _apply_env(config: AppConfig) -> AppConfig:
    if os.environ.get(ENV_HOST):
        config.host = os.environ[ENV_HOST]
    if os.environ.get(ENV_PORT):
        config.port = _as_int(ENV_PORT, os.environ[ENV_PORT])
    if os.environ.get(ENV_SNAPSHOT):
        config.snapshot_path = os.environ[ENV_SNAPSHOT]
    if os.environ.get(ENV_PROVIDER_MODE):
        config.providers.mode = _as_mode(os.environ[ENV_PROVIDER_MODE])
    if os.environ.get(ENV_CORPUS_DIR):
        config.providers.corpus_dir = os.environ[ENV_CORPUS_DIR]
    if os.environ.get(ENV_TIMEOUT_MS):
        config.providers.timeout_ms = _as_number(ENV_TIMEOUT_MS, os.environ[ENV_TIMEOUT_MS])
    if os.environ.get(ENV_MAX_LIMIT):
        config.providers.max_limit = _as_int(ENV_MAX_LIMIT, os.environ[ENV_MAX_LIMIT])
    if os.environ.get(ENV_UI_DIR):
        config.ui_dir = os.environ[ENV_UI_DIR]
    return config


def _as_int(name: str, value: object) -> int:
    try:
        number = int(str(value))
    except ValueError as exc:
        raise _config_error(f"{name} must be an integer, got {value!r}") from exc
    return number


def _as_number(name: str, value: object) -> float:
    try:
        return float(str(value))
    except ValueError as exc:
        raise _config_error(f"{name} must be a number, got {value!r}") from exc


def _as_mode(value: object) -> str:
    mode = str(value)
    if mode not in ("mock", "live"):
        raise _config_error(f"provider mode must be 'mock' or 'live', got {mode!r}")
    return mode


def default_corpus_dir() -> Path:
    from kgatlas.fixture import CORPUS_DIR
    return CORPUS_DIR


def resolve_corpus_dir(config: AppConfig) -> Path:
    return Path(config.providers.corpus_dir) if config.providers.corpus_dir else default_corpus_dir()
