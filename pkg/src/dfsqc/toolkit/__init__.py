from dfsqc.toolkit.arrays import ComplexArray
from dfsqc.toolkit.errors import DfsqcException
from dfsqc.toolkit.models import DfsqcError, ExperimentKind, Status
from dfsqc.toolkit.quantum import DensityMatrix, StateVector, Unitary, expm_hermitian, fidelity, partial_trace, tensor
from dfsqc.toolkit.report import ExperimentReport, MatrixBundle

__all__ = [
    "ComplexArray",
    "DfsqcException",
    "DfsqcError",
    "ExperimentKind",
    "Status",
    "StateVector",
    "DensityMatrix",
    "Unitary",
    "tensor",
    "expm_hermitian",
    "fidelity",
    "partial_trace",
    "ExperimentReport",
    "MatrixBundle",
]
