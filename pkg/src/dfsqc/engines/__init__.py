from dfsqc.engines.base import EngineOutput, ExperimentEngine, ExperimentResult
from dfsqc.engines.bell import BellEngine
from dfsqc.engines.cnot import CnotTomographyEngine
from dfsqc.engines.coherence import CoherenceEngine
from dfsqc.engines.scan import CpScanEngine, MsScanEngine
from dfsqc.toolkit.models import ExperimentKind

ENGINES: dict[str, type[ExperimentEngine]] = {
    ExperimentKind.BELL: BellEngine,
    ExperimentKind.CNOT_TOMOGRAPHY: CnotTomographyEngine,
    ExperimentKind.COHERENCE: CoherenceEngine,
    ExperimentKind.MS_SCAN: MsScanEngine,
    ExperimentKind.CP_SCAN: CpScanEngine,
}


def engine_for(kind: str) -> type[ExperimentEngine]:
    return ENGINES[ExperimentKind(kind)]


__all__ = [
    "ExperimentEngine",
    "EngineOutput",
    "ExperimentResult",
    "BellEngine",
    "CnotTomographyEngine",
    "CoherenceEngine",
    "MsScanEngine",
    "CpScanEngine",
    "ENGINES",
    "engine_for",
]
