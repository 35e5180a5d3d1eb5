"""Runtime settings loaded from an optional ``key=value`` file."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Optional

from .tree import DEFAULT_DEPTH_CAP

__all__ = ["Config", "ConfigError", "CONFIG_ENV", "load_config"]

CONFIG_ENV = "STERNBROCOT_CONFIG"
FORMATS = ("text", "json", "csv")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    depth_cap: int = DEFAULT_DEPTH_CAP
    # None means the per-target default 64 + (num + den) * det
    default_max_steps: Optional[int] = None
    output_format: str = "text"
    parallelism: int = 1

    def __post_init__(self):
        if self.depth_cap < 1:
            raise ConfigError("depth_cap must be >= 1")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be >= 1")
        if self.output_format not in FORMATS:
            raise ConfigError(f"output_format must be one of {FORMATS}")
        if self.default_max_steps is not None and self.default_max_steps < 1:
            raise ConfigError("default_max_steps must be >= 1")

    def override(self, **kwargs) -> "Config":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


def _parse_file(path: Path) -> dict:
    known = {f.name: f.type for f in fields(Config)}
    values = {}
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or key not in known:
            raise ConfigError(f"{path}:{lineno}: unrecognized line {line!r}")
        if key == "output_format":
            values[key] = value
        else:
            try:
                values[key] = int(value)
            except ValueError:
                raise ConfigError(f"{path}:{lineno}: {key} must be an integer") from None
    return values


def load_config(path: Optional[str] = None) -> Config:
    """Read ``path``, else the file named by ``$STERNBROCOT_CONFIG``, else defaults."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return Config()
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file {path} not found")
    return Config(**_parse_file(p))
