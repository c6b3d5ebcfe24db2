from typing import Any

from pydantic import BaseModel

from dfsqc.encoding.dfs import decode_in_dfs
from dfsqc.encoding.register import LogicalRegister
from dfsqc.toolkit.quantum import fidelity


class DfsReport(BaseModel):
    permanence: float
    in_dfs_fidelity: float
    overall: float


def dfs_report(rho_physical: Any, ideal_logical: Any, register: LogicalRegister | None = None) -> DfsReport:
    """
    Permanence, fidelity of the renormalized DFS block against ``ideal_logical``, and their product.

    Raises:
        EmptySubspaceError: if the state has (almost) no weight in the DFS
    """
    logical, permanence = decode_in_dfs(rho_physical, register)
    in_dfs = fidelity(logical, ideal_logical)
    return DfsReport(permanence=permanence, in_dfs_fidelity=in_dfs, overall=permanence * in_dfs)
