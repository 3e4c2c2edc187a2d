"""Paths to the fixtures, lexical resources and models shipped inside the package."""

from __future__ import annotations

from importlib import resources
from pathlib import Path


def data_dir() -> Path:
    return Path(str(resources.files("kae") / "data"))


def fixture_path(name: str) -> Path:
    return data_dir() / "fixtures" / name


def model_path(task: str, kind: str = "gbdt") -> Path:
    return data_dir() / "models" / f"{task}_{kind}.bin"
