"""
Decoherence-free subspace of paired ions: encoding, projection and the collective dephasing
channel it is immune to.
"""

import logging
from collections.abc import Sequence
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import stats

from dfsqc.encoding.register import LogicalRegister
from dfsqc.toolkit.errors import DimensionError, EmptySubspaceError, InvalidParameterError
from dfsqc.toolkit.quantum import DensityMatrix, StateVector, as_array

logger = logging.getLogger(__name__)

EMPTY_SUBSPACE_THRESHOLD = 1e-9
DEFAULT_MAX_RATIO = 1e6


class DfsProjector(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    # serialised as "register"; BaseModel already has a register attribute
    layout: LogicalRegister = Field(alias="register")

    @property
    def dim(self) -> int:
        return self.layout.physical_dim

    @property
    def rank(self) -> int:
        return self.layout.logical_dim

    @property
    def matrix(self) -> np.ndarray:
        iso = self.layout.isometry()
        return iso @ iso.conj().T

    def compress(self, rho: Any) -> np.ndarray:
        """V^dagger rho V: the unnormalized logical block of a physical operator"""
        matrix = as_array(rho)
        if matrix.shape != (self.dim, self.dim):
            raise DimensionError(details=f"expected a {self.dim}x{self.dim} physical matrix, got {matrix.shape}")
        iso = self.layout.isometry()
        return iso.conj().T @ matrix @ iso

    def permanence(self, rho: Any) -> float:
        return float(np.clip(np.trace(self.compress(rho)).real, 0.0, 1.0))


def _resolve_register(register: LogicalRegister | None, dim: int) -> LogicalRegister:
    if register is None:
        return LogicalRegister.for_dimension(dim)
    if register.physical_dim != dim:
        raise DimensionError(details=f"register spans dimension {register.physical_dim}, matrix has {dim}")
    return register


def encode(logical_bits: str, register: LogicalRegister | None = None) -> StateVector:
    register = register or LogicalRegister.linear(len(logical_bits))
    physical = register.physical_bits(logical_bits)
    vec = np.zeros(register.physical_dim, dtype=np.complex128)
    vec[int(physical, 2)] = 1.0
    return StateVector(data=vec)


def encode_state(logical_state: Any, register: LogicalRegister) -> StateVector:
    """Embed an arbitrary logical state vector into the physical space"""
    vec = as_array(logical_state)
    if vec.shape != (register.logical_dim,):
        raise DimensionError(details=f"expected a logical vector of dim {register.logical_dim}, got {vec.shape}")
    return StateVector(data=register.isometry() @ vec)


def project_to_dfs(rho_physical: Any, register: LogicalRegister | None = None) -> np.ndarray:
    """Logical block of ``rho_physical`` without renormalization; its trace is the permanence"""
    matrix = as_array(rho_physical)
    register = _resolve_register(register, matrix.shape[0])
    return DfsProjector(register=register).compress(matrix)


def decode_in_dfs(rho_physical: Any, register: LogicalRegister | None = None) -> tuple[DensityMatrix, float]:
    """
    Project a physical state onto the DFS and renormalize.

    Returns:
        the logical density matrix and the permanence Tr(P rho P)

    Raises:
        EmptySubspaceError: if the permanence is below 1e-9; the error carries the permanence
    """
    block = project_to_dfs(rho_physical, register)
    permanence = float(np.clip(np.trace(block).real, 0.0, 1.0))
    if permanence < EMPTY_SUBSPACE_THRESHOLD:
        raise EmptySubspaceError(permanence=permanence)
    logical = block / permanence
    logical = (logical + logical.conj().T) / 2
    return DensityMatrix(data=logical), permanence


def excitation_balance(dim: int) -> np.ndarray:
    """Sum of sigma_z eigenvalues for every computational basis index"""
    n_qubits = int(round(np.log2(dim)))
    if 2**n_qubits != dim:
        raise DimensionError(details=f"dimension {dim} is not a power of two")
    indices = np.arange(dim)
    ones = np.array([bin(i).count("1") for i in indices])
    return n_qubits - 2 * ones


def collective_dephasing(rho: Any, phi_samples: Sequence[float] | np.ndarray) -> DensityMatrix:
    """
    Average U(phi) rho U(phi)^dagger over the given phases, U(phi) = exp(-i phi/2 sum_k sigma_z^(k)).

    The channel only rescales off-diagonal entries, so it is evaluated through one kernel per
    distinct excitation difference rather than per sample.
    """
    matrix = as_array(rho)
    phases = np.asarray(phi_samples, dtype=float)
    if phases.size == 0:
        raise DimensionError(details="collective dephasing needs at least one phase sample")
    balance = excitation_balance(matrix.shape[0])
    difference = balance[:, None] - balance[None, :]
    kernel = np.ones_like(matrix)
    for value in np.unique(difference):
        if value == 0:
            continue
        kernel[difference == value] = np.mean(np.exp(-0.5j * value * phases))
    result = matrix * kernel
    return DensityMatrix(data=(result + result.conj().T) / 2)


def gaussian_phases(std: float, n_samples: int, seed: int | Sequence[int]) -> np.ndarray:
    """
    Stratified Gaussian phases: one draw inside each of ``n_samples`` equal-probability strata, shuffled.

    Keeps the sample mean of exp(i phi) within ~1/n of its analytic value even deep in the decay.
    """
    rng = np.random.default_rng(seed)
    if std == 0:
        return np.zeros(n_samples)
    uniform = (np.arange(n_samples) + rng.random(n_samples)) / n_samples
    phases = stats.norm.ppf(uniform) * std
    rng.shuffle(phases)
    return phases


def coherence_ratio(phi_std: float, n_samples: int, seed: int | Sequence[int], max_ratio: float = DEFAULT_MAX_RATIO) -> float:
    """
    Ratio of surviving logical to physical coherence under the same sampled collective phases.

    Both reference states start in an equal superposition: (|0>+|1>)/sqrt(2) on one ion and
    (|0>_L+|1>_L)/sqrt(2) on one pair. The result is capped at ``max_ratio``.
    """
    if n_samples < 1000:
        raise InvalidParameterError(details=f"coherence_ratio needs at least 1000 samples, got {n_samples}")
    phases = gaussian_phases(phi_std, n_samples, seed)

    physical = np.full((2, 2), 0.5, dtype=np.complex128)
    physical_out = as_array(collective_dephasing(physical, phases))
    physical_coherence = abs(physical_out[0, 1]) / 0.5

    logical_vec = as_array(encode_state(np.array([1, 1]) / np.sqrt(2), LogicalRegister.linear(1)))
    logical = np.outer(logical_vec, logical_vec.conj())
    logical_out = as_array(collective_dephasing(logical, phases))
    logical_coherence = abs(logical_out[2, 1]) / 0.5

    logger.debug(f"Coherence after dephasing std={phi_std}: physical={physical_coherence:.3e} logical={logical_coherence:.12f}")
    if physical_coherence * max_ratio <= logical_coherence:
        return float(max_ratio)
    return float(max(logical_coherence / physical_coherence, 1.0))
