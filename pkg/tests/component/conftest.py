import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import pytest

from dfsqc.cli.config import ExperimentConfig


@pytest.fixture
def write_config(tmp_path) -> Callable[..., Path]:
    """Write a config JSON into tmp_path and return its path"""

    def _write(name: str = "config.json", **fields: Any) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(fields))
        return path

    return _write


@pytest.fixture
def fast_bell_config() -> ExperimentConfig:
    return ExperimentConfig(kind="bell", exact_statistics=True, noise_samples=4)


@pytest.fixture
def fast_cnot_config() -> ExperimentConfig:
    return ExperimentConfig(kind="cnot-tomo", exact_statistics=True, n_haar_samples=1000, noise_samples=2)


@pytest.fixture
def fast_scan() -> dict[str, Any]:
    """Short scan grids and a coarse step count for the motional engines"""
    return {"timing_errors": [0.0, 0.02], "imbalances": [0.01, 0.02], "steps": 400, "n_fock": 16}
