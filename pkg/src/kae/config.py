"""Run configuration: defaults, key=value config files, environment and flag overrides."""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any

from kae.errors import ConfigError
from kae.lexical import LexicalResources


@dataclass(frozen=True)
class RunConfig:
    lam: float = 0.5
    preselect_th: float = 0.3
    preselect_direction: str = "below"
    preselect_enabled: bool = True
    prop_th: float = 0.75
    decision_th: float = 0.5
    seed: int = 42
    ratio: int = 10
    split: float = 0.8
    model_kind: str = "gbdt"
    embeddings: str | None = None
    taxonomy: str | None = None
    stopwords: str | None = None
    jobs: int = field(default_factory=lambda: os.cpu_count() or 1)
    keep_unaligned_etypes: bool = False

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if not (0.0 < self.lam <= 1.0):
            raise ConfigError(f"lambda must lie in (0, 1], got {self.lam}")
        if not (0.0 <= self.preselect_th <= 2.0):
            raise ConfigError(f"pre-selection threshold must lie in [0, 2], got {self.preselect_th}")
        if self.preselect_direction not in ("below", "above"):
            raise ConfigError(
                f"pre-selection direction must be 'below' or 'above', got {self.preselect_direction!r}"
            )
        if not (0.0 < self.prop_th <= 1.0):
            raise ConfigError(f"property-match threshold must lie in (0, 1], got {self.prop_th}")
        if not (0.0 <= self.decision_th <= 1.0):
            raise ConfigError(f"decision threshold must lie in [0, 1], got {self.decision_th}")
        if self.ratio < 1:
            raise ConfigError(f"negative:positive ratio must be >= 1, got {self.ratio}")
        if not (0.0 < self.split < 1.0):
            raise ConfigError(f"train split must lie in (0, 1), got {self.split}")
        if self.model_kind not in ("gbdt", "mlp"):
            raise ConfigError(f"model kind must be 'gbdt' or 'mlp', got {self.model_kind!r}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")
        for name in ("embeddings", "taxonomy", "stopwords"):
            value = getattr(self, name)
            if value is not None and not Path(value).is_file():
                raise ConfigError(f"{name} file not found: {value}")

    @cached_property
    def resources(self) -> LexicalResources:
        return LexicalResources.load(self.embeddings, self.taxonomy, self.stopwords)

    def replace(self, **changes) -> RunConfig:
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        # jobs only affects scheduling, never results, so it stays out of artifacts
        return {f.name: getattr(self, f.name) for f in dataclasses.fields(self) if f.name != "jobs"}


_ALIASES = {"lambda": "lam", "preselect-th": "preselect_th", "prop-th": "prop_th"}


def _coerce(name: str, raw: str) -> Any:
    types = {f.name: f.type for f in dataclasses.fields(RunConfig)}
    if name not in types:
        raise ConfigError(f"unknown config key {name!r}")
    value = raw.strip().strip('"').strip("'")
    kind = types[name]
    try:
        if kind == "float":
            return float(value)
        if kind == "int":
            return int(value)
        if kind == "bool":
            if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(value)
            return value.lower() in ("true", "1", "yes")
    except ValueError:
        raise ConfigError(f"bad value for {name!r}: {raw.strip()!r}") from None
    return value or None


def read_config_file(path: str | Path) -> dict[str, Any]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line or (line.startswith("[") and line.endswith("]")):
            continue
        key, sep, raw = line.partition("=")
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key = key.strip().replace("-", "_") if key.strip() not in _ALIASES else _ALIASES[key.strip()]
        values[key] = _coerce(key, raw)
    return values


def resolve_config(flags: dict[str, Any], config_path: str | None = None, env=None) -> RunConfig:
    """Merge defaults < config file < KAE_SEED environment variable < explicit flags."""
    env = os.environ if env is None else env
    values: dict[str, Any] = {}
    if config_path:
        values.update(read_config_file(config_path))
    if env.get("KAE_SEED"):
        values["seed"] = _coerce("seed", env["KAE_SEED"])
    values.update({k: v for k, v in flags.items() if v is not None})
    return RunConfig(**values)
