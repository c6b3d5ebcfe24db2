"""
Process tomography on the logical space.

Vectorisation is row-major (vec(rho)[i d + j] = rho_ij). The superoperator S maps vec(rho_in) to
vec(rho_out); its Choi matrix J = sum_ij E(|i><j|) (x) |i><j| and the chi matrix over the Pauli
basis A_m satisfy J = M chi M^dagger with M[:, m] = vec(A_m).
"""

import itertools
import logging
import math
from collections.abc import Callable
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import linalg as la

from dfsqc.encoding.dfs import project_to_dfs
from dfsqc.encoding.register import LogicalRegister
from dfsqc.tomography.measurement import collect_dataset
from dfsqc.tomography.state import pauli_matrices, pauli_strings, reconstruct_state
from dfsqc.toolkit.arrays import ComplexArray
from dfsqc.toolkit.errors import ConditioningError, DimensionError
from dfsqc.toolkit.parallel import parallel_map
from dfsqc.toolkit.quantum import as_array, is_hermitian

logger = logging.getLogger(__name__)

CONDITION_LIMIT = 1e10
_SINGLE_INPUTS = {
    "0": np.array([1, 0], dtype=np.complex128),
    "1": np.array([0, 1], dtype=np.complex128),
    "+": np.array([1, 1], dtype=np.complex128) / math.sqrt(2),
    "+i": np.array([1, 1j], dtype=np.complex128) / math.sqrt(2),
}

Channel = Callable[[np.ndarray], Any]


class ChiMatrix(BaseModel):
    model_config = ConfigDict(frozen=True)

    data: ComplexArray
    labels: list[str]
    input_permanence: list[float] | None = Field(default=None)

    @model_validator(mode="after")
    def _check_chi(self) -> "ChiMatrix":
        size = len(self.labels)
        if self.data.shape != (size, size):
            raise ValueError(f"chi of shape {self.data.shape} does not match {size} basis labels")
        if not is_hermitian(self.data, atol=1e-9):
            raise ValueError("chi matrix is not Hermitian")
        return self

    @property
    def n_qubits(self) -> int:
        return len(self.labels[0])

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    @property
    def trace(self) -> float:
        return float(np.trace(self.data).real)

    def choi(self) -> np.ndarray:
        basis = pauli_vectors(self.n_qubits)
        return basis @ self.data @ basis.conj().T

    def choi_tensor(self) -> np.ndarray:
        """J4[a, i, b, j] with E(rho)_ab = sum_ij J4[a, i, b, j] rho_ij"""
        d = self.dim
        return self.choi().reshape(d, d, d, d)

    def apply(self, rho: Any) -> np.ndarray:
        return np.einsum("aibj,ij->ab", self.choi_tensor(), as_array(rho))

    def trace_preservation_residual(self) -> float:
        """max |sum_a J4[a, i, a, j] - delta_ij|"""
        partial = np.einsum("aiaj->ij", self.choi_tensor())
        return float(np.max(np.abs(partial - np.eye(self.dim))))


def pauli_vectors(n_qubits: int) -> np.ndarray:
    """M with columns vec(A_m) for the Pauli products in label order"""
    mats = pauli_matrices(n_qubits)
    return mats.reshape(len(mats), -1).T


def logical_input_states(n_qubits: int = 2) -> list[tuple[str, np.ndarray]]:
    """The 4^n product inputs {|0>, |1>, |+>, |+i>}^n, first qubit slowest"""
    inputs = []
    for combo in itertools.product(_SINGLE_INPUTS, repeat=n_qubits):
        vec = np.array([1], dtype=np.complex128)
        for key in combo:
            vec = np.kron(vec, _SINGLE_INPUTS[key])
        inputs.append((",".join(combo), vec))
    return inputs


def choi_from_superoperator(superop: np.ndarray, dim: int) -> np.ndarray:
    return superop.reshape(dim, dim, dim, dim).transpose(0, 2, 1, 3).reshape(dim * dim, dim * dim)


def chi_from_choi(choi: np.ndarray, n_qubits: int) -> np.ndarray:
    basis = pauli_vectors(n_qubits)
    d = 2**n_qubits
    chi = basis.conj().T @ choi @ basis / d**2
    return (chi + chi.conj().T) / 2


def project_choi_to_cp(choi: np.ndarray) -> np.ndarray:
    """Clip the negative eigenvalues of a Choi matrix"""
    hermitian = (choi + choi.conj().T) / 2
    eigvals, eigvecs = la.eigh(hermitian)
    return (eigvecs * np.clip(eigvals, 0.0, None)) @ eigvecs.conj().T


def chi_from_unitary(unitary: Any) -> ChiMatrix:
    """Rank-one chi of a unitary: chi = c c^dagger with c_m = Tr(A_m^dagger U) / d"""
    u = as_array(unitary)
    d = u.shape[0]
    n_qubits = int(round(math.log2(d)))
    coefficients = np.einsum("mij,ij->m", pauli_matrices(n_qubits).conj(), u) / d
    return ChiMatrix(data=np.outer(coefficients, coefficients.conj()), labels=list(pauli_strings(n_qubits)))


def process_fidelity(chi_ideal: ChiMatrix, chi: ChiMatrix) -> float:
    """Tr(chi_ideal chi) / Tr(chi); the normalization keeps trace-decreasing (post-selected) maps comparable"""
    overlap = float(np.trace(chi_ideal.data @ chi.data).real)
    return overlap / chi.trace if chi.trace > 0 else 0.0


def chi_from_outputs(inputs: list[np.ndarray], outputs: list[np.ndarray], n_qubits: int) -> np.ndarray:
    """
    Solve S vec(rho_in) = vec(rho_out) over the informationally complete inputs and return chi.

    Raises:
        ConditioningError: if the input states do not span the operator space
    """
    d = 2**n_qubits
    vin = np.stack([rho.reshape(-1) for rho in inputs], axis=1)
    vout = np.stack([as_array(rho).reshape(-1) for rho in outputs], axis=1)
    condition = np.linalg.cond(vin)
    if not np.isfinite(condition) or condition > CONDITION_LIMIT:
        raise ConditioningError(details=f"input system condition number {condition:.3e}")
    superop = vout @ np.linalg.inv(vin)
    choi = project_choi_to_cp(choi_from_superoperator(superop, d))
    return chi_from_choi(choi, n_qubits)


def process_tomography(
    channel: Channel,
    shots: int | None = None,
    seed: int = 0,
    n_qubits: int = 2,
    register: LogicalRegister | None = None,
    threads: int = 1,
    mle: bool = False,
) -> ChiMatrix:
    """
    Chi matrix of ``channel`` from the 16 (4^n) canonical logical inputs.

    ``channel`` takes a logical density matrix. When it returns a logical matrix, the output is
    read directly (exact) or through state tomography on the logical qubits (``shots``). When a
    ``register`` is given the channel is expected to return the physical state of the ion string;
    the physical state is reconstructed from the full 3^n_physical setting set and its DFS block is
    kept without renormalization, so the chi matrix is trace-decreasing by the lost permanence.

    Input ``k`` is measured with seeds derived from ``[seed, k]``.
    """
    states = logical_input_states(n_qubits)
    inputs = [np.outer(vec, vec.conj()) for _, vec in states]

    def measure(item: tuple[int, np.ndarray]) -> np.ndarray:
        index, rho_in = item
        output = as_array(channel(rho_in))
        if register is not None:
            if output.shape != (register.physical_dim, register.physical_dim):
                raise DimensionError(details=f"channel returned shape {output.shape} for a {register.n_physical}-ion register")
            if shots is not None:
                output = reconstruct_state(collect_dataset(output, shots, seed=[seed, index]), mle=mle).data
            return project_to_dfs(output, register)
        if shots is not None:
            return reconstruct_state(collect_dataset(output, shots, seed=[seed, index]), mle=mle).data
        return output

    outputs = parallel_map(measure, list(enumerate(inputs)), threads=threads)
    chi = chi_from_outputs(inputs, outputs, n_qubits)
    permanence = [float(np.trace(out).real) for out in outputs] if register is not None else None
    logger.debug(f"Process tomography finished: Tr(chi)={np.trace(chi).real:.6f}")
    return ChiMatrix(data=chi, labels=list(pauli_strings(n_qubits)), input_permanence=permanence)


def depolarizing_channel(p: float, dim: int) -> Channel:
    def apply(rho: np.ndarray) -> np.ndarray:
        return (1 - p) * rho + p * np.trace(rho) * np.eye(dim) / dim

    return apply


def unitary_channel(unitary: Any) -> Channel:
    u = as_array(unitary)

    def apply(rho: np.ndarray) -> np.ndarray:
        return u @ rho @ u.conj().T

    return apply
