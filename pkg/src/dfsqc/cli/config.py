import json
import logging
import math
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from dfsqc.encoding.register import LogicalRegister
from dfsqc.gates.params import GateParams
from dfsqc.noise.channel import DEFAULT_NOISE_SAMPLES
from dfsqc.noise.model import NoiseModel
from dfsqc.toolkit.errors import ConfigError
from dfsqc.toolkit.models import ExperimentKind

logger = logging.getLogger(__name__)

DEFAULT_TIMING_ERRORS = [-0.1, -0.05, -0.02, -0.01, 0.0, 0.01, 0.02, 0.05, 0.1]
DEFAULT_IMBALANCES = [1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2, 1e-1]


class CoherenceConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    phi_std: float = Field(default=math.pi, ge=0.0)
    n_samples: int = Field(default=100_000, ge=1000)
    max_ratio: float = Field(default=1e6, gt=1.0)
    scan_points: int = Field(default=9, ge=2, description="phase std grid from 0 to phi_std for coherence_scan.csv")


class ScanConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    timing_errors: list[float] = Field(default_factory=lambda: list(DEFAULT_TIMING_ERRORS))
    imbalances: list[float] = Field(default_factory=lambda: list(DEFAULT_IMBALANCES))
    n_fock: int = Field(default=24, ge=8)
    steps: int = Field(default=16384, ge=400)

    @field_validator("timing_errors")
    @classmethod
    def _check_timing(cls, value: list[float]) -> list[float]:
        if any(not -0.5 < f < 0.5 for f in value):
            raise ValueError("timing error fractions must lie in (-0.5, 0.5)")
        return value

    @field_validator("imbalances")
    @classmethod
    def _check_imbalances(cls, value: list[float]) -> list[float]:
        if any(e <= 0 for e in value):
            raise ValueError("imbalances must be positive")
        return value


class ExperimentConfig(BaseModel):
    """
    One experiment run. ``shots`` is per measurement setting; ``exact_statistics`` replaces shot
    sampling by exact outcome probabilities.
    """

    model_config = ConfigDict(frozen=True, extra="forbid", use_enum_values=True, populate_by_name=True)

    kind: ExperimentKind
    layout: LogicalRegister = Field(default_factory=lambda: LogicalRegister.linear(2), alias="register")
    gates: GateParams = Field(default_factory=GateParams)
    noise: NoiseModel = Field(default_factory=NoiseModel)
    control: int = Field(default=0, ge=0)
    target: int = Field(default=1, ge=0)
    shots: int = Field(default=100, ge=1)
    exact_statistics: bool = False
    mle: bool = False
    n_haar_samples: int = Field(default=200_000, ge=1000)
    noise_samples: int = Field(default=DEFAULT_NOISE_SAMPLES, ge=1)
    seed: int = 0
    output: str = "dfsqc-results"
    coherence: CoherenceConfig = Field(default_factory=CoherenceConfig)
    scan: ScanConfig = Field(default_factory=ScanConfig)

    @model_validator(mode="after")
    def _check_roles(self) -> "ExperimentConfig":
        if self.kind in (ExperimentKind.BELL, ExperimentKind.CNOT_TOMOGRAPHY):
            if self.control == self.target:
                raise ValueError("control and target must differ")
            if max(self.control, self.target) >= self.layout.n_logical:
                raise ValueError(f"control/target outside a register of {self.layout.n_logical} logical qubits")
        return self

    @property
    def effective_shots(self) -> int | None:
        return None if self.exact_statistics else self.shots

    def with_seed(self, seed: int) -> "ExperimentConfig":
        """Override both the pipeline seed and the noise seed"""
        return self.model_copy(update={"seed": seed, "noise": self.noise.model_copy(update={"seed": seed})})


def _format_validation_error(error: ValidationError) -> str:
    return "; ".join(f"{'.'.join(str(part) for part in item['loc']) or '<root>'}: {item['msg']}" for item in error.errors())


def parse_config(text: str, source: str = "<config>") -> ExperimentConfig:
    """
    Raises:
        ConfigError: with line/column for JSON syntax errors and the field path for schema violations
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(details=f"{source}:{e.lineno}:{e.colno}: {e.msg}") from e
    try:
        return ExperimentConfig.model_validate(payload)
    except ValidationError as e:
        raise ConfigError(details=f"{source}: {_format_validation_error(e)}") from e


def load_config(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(details=f"{path}: {e.strerror}") from e
    logger.debug(f"Loaded config from {path}")
    return parse_config(text, source=str(path))


def config_schema() -> dict:
    return ExperimentConfig.model_json_schema()
