import json
import logging
from typing import Any, NoReturn

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_serializer, model_validator
from pydantic_core.core_schema import SerializationInfo, SerializerFunctionWrapHandler

from dfsqc.toolkit.arrays import ComplexArray
from dfsqc.toolkit.models import DfsqcError, ExperimentKind, Status

logger = logging.getLogger(__name__)


class ExperimentReport(BaseModel):
    """Top-level content of report.json; nothing time- or host-dependent goes in here"""

    model_config = ConfigDict(use_enum_values=True)

    kind: ExperimentKind
    status: Status
    version: str
    config_hash: str
    seed: int
    metrics: dict[str, Any] = Field(default_factory=dict)
    calibration: dict[str, Any] | None = Field(default=None)
    experimental_reference: dict[str, Any] | None = Field(default=None)
    csv_files: list[str] | None = Field(default=None)
    error: DfsqcError | None = Field(default=None)

    @model_validator(mode="before")
    @classmethod
    def _prepare_model(cls, data: Any) -> Any:
        if isinstance(data, dict) and "status" not in data:
            data["status"] = Status.FAILED if data.get("error") is not None else Status.COMPLETED
        return data

    # noinspection PyUnusedLocal
    @model_serializer(mode="wrap")
    def _force_exclude_none(self, handler: SerializerFunctionWrapHandler, info: SerializationInfo) -> dict[str, Any]:
        result = handler(self)
        # force exclude_none=True over BaseModel
        return {k: v for k, v in result.items() if v is not None}

    def __str__(self) -> str:
        return f"<{self.__class__.__name__} {self.model_dump()}>"

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} {self.model_dump()}>"

    @classmethod
    def from_error(cls, error: DfsqcError, *, kind: ExperimentKind, version: str, config_hash: str, seed: int) -> "ExperimentReport":
        return cls(kind=kind, status=Status.FAILED, version=version, config_hash=config_hash, seed=seed, error=error)

    def raise_for_status(self) -> NoReturn | None:
        if self.error is not None:
            raise self.error.throw()

    def to_json(self) -> str:
        return canonical_json(self.model_dump(mode="json"))


class MatrixBundle(BaseModel):
    """Named density and process matrices written to matrices.json"""

    matrices: dict[str, ComplexArray] = Field(default_factory=dict)
    labels: dict[str, list[str]] = Field(default_factory=dict)

    def add(self, name: str, matrix: Any, labels: list[str] | None = None) -> None:
        self.matrices[name] = np.asarray(matrix, dtype=np.complex128)
        if labels is not None:
            self.labels[name] = labels

    def to_json(self) -> str:
        return canonical_json(self.model_dump(mode="json"))


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def rounded(value: float, digits: int = 12) -> float:
    """Round a metric so that last-bit BLAS differences never reach the report"""
    return float(round(float(value), digits))
