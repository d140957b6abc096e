"""Flat key-value config files (``key = value`` lines, ``#`` comments)."""
from __future__ import annotations

from pathlib import Path


class ConfigError(ValueError):
    """Raised for unreadable or ill-typed config entries."""


def parse_kv_file(path: str | Path) -> dict[str, str]:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        if not key:
            raise ConfigError(f"{path}:{lineno}: empty key")
        if key in entries:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        entries[key] = value.strip()
    return entries


def as_int(entries: dict[str, str], key: str, default: int) -> int:
    if key not in entries:
        return default
    try:
        return int(entries[key])
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {entries[key]!r}")


def as_float(entries: dict[str, str], key: str, default: float) -> float:
    if key not in entries:
        return default
    try:
        return float(entries[key])
    except ValueError:
        raise ConfigError(f"{key} must be a number, got {entries[key]!r}")


def as_bool(entries: dict[str, str], key: str, default: bool) -> bool:
    if key not in entries:
        return default
    value = entries[key].lower()
    if value in ("true", "yes", "1", "on"):
        return True
    if value in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"{key} must be a boolean, got {entries[key]!r}")


def as_float_list(entries: dict[str, str], key: str, default: tuple[float, ...]) -> tuple[float, ...]:
    if key not in entries:
        return default
    try:
        return tuple(float(v.strip()) for v in entries[key].split(",") if v.strip())
    except ValueError:
        raise ConfigError(f"{key} must be comma-separated numbers, got {entries[key]!r}")


def as_int_list(entries: dict[str, str], key: str, default: tuple[int, ...]) -> tuple[int, ...]:
    if key not in entries:
        return default
    try:
        return tuple(int(v.strip()) for v in entries[key].split(",") if v.strip())
    except ValueError:
        raise ConfigError(f"{key} must be comma-separated integers, got {entries[key]!r}")


def as_int_pair(entries: dict[str, str], key: str, default: tuple[int, int]) -> tuple[int, int]:
    values = as_int_list(entries, key, default)
    if len(values) != 2:
        raise ConfigError(f"{key} must be two comma-separated integers")
    return (values[0], values[1])
