from dfsqc.encoding.dfs import (
    DfsProjector,
    coherence_ratio,
    collective_dephasing,
    decode_in_dfs,
    encode,
    encode_state,
    gaussian_phases,
    project_to_dfs,
)
from dfsqc.encoding.register import LogicalRegister

__all__ = [
    "LogicalRegister",
    "DfsProjector",
    "encode",
    "encode_state",
    "decode_in_dfs",
    "project_to_dfs",
    "collective_dephasing",
    "gaussian_phases",
    "coherence_ratio",
]
