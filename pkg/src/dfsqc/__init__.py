from dfsqc._version import __version__
from dfsqc.encoding import LogicalRegister, decode_in_dfs, encode
from dfsqc.gates import GateParams, PulseSequence, compile_cnot
from dfsqc.noise import NoiseModel
from dfsqc.toolkit import DensityMatrix, StateVector, Unitary

__all__ = [
    "__version__",
    "LogicalRegister",
    "encode",
    "decode_in_dfs",
    "GateParams",
    "PulseSequence",
    "compile_cnot",
    "NoiseModel",
    "StateVector",
    "DensityMatrix",
    "Unitary",
]
