import logging
from abc import ABC, abstractmethod
from typing import Any, ClassVar

from pydantic import BaseModel, Field

from dfsqc._version import __version__
from dfsqc.cli.config import ExperimentConfig
from dfsqc.toolkit.errors import DfsqcException
from dfsqc.toolkit.hashing import config_hash
from dfsqc.toolkit.models import DfsqcError, ExperimentKind
from dfsqc.toolkit.report import ExperimentReport, MatrixBundle

logger = logging.getLogger(__name__)

CsvTable = list[list[Any]]


class EngineOutput(BaseModel):
    metrics: dict[str, Any] = Field(default_factory=dict)
    matrices: MatrixBundle = Field(default_factory=MatrixBundle)
    tables: dict[str, CsvTable] = Field(default_factory=dict)
    experimental_reference: dict[str, Any] | None = None


class ExperimentResult(BaseModel):
    report: ExperimentReport
    matrices: MatrixBundle = Field(default_factory=MatrixBundle)
    tables: dict[str, CsvTable] = Field(default_factory=dict)


class ExperimentEngine(ABC):
    """One experiment kind: turns a validated config into metrics, matrices and CSV tables"""

    kind: ClassVar[ExperimentKind]

    def __init__(self, config: ExperimentConfig, threads: int = 1) -> None:
        self.config = config
        self.threads = threads

    @abstractmethod
    def execute(self) -> EngineOutput:
        pass

    def run(self) -> ExperimentResult:
        digest = config_hash(self.config)
        try:
            output = self.execute()
        except DfsqcException as e:
            logger.debug(f"{self.kind} failed: {e}")
            report = ExperimentReport.from_error(
                DfsqcError.from_exception(e), kind=self.kind, version=__version__, config_hash=digest, seed=self.config.seed
            )
            return ExperimentResult(report=report)
        report = ExperimentReport(
            kind=self.kind,
            version=__version__,
            config_hash=digest,
            seed=self.config.seed,
            metrics=output.metrics,
            calibration=self._calibration(),
            experimental_reference=output.experimental_reference,
            csv_files=sorted(output.tables) or None,
        )
        return ExperimentResult(report=report, matrices=output.matrices, tables=output.tables)

    def _calibration(self) -> dict[str, Any] | None:
        note = self.config.noise.calibration_note
        return {"note": note, "noise": self.config.noise.model_dump(mode="json")} if note else None
