"""
Dense complex linear algebra shared by every dfsqc module.

Conventions:
    * qubit basis index 0 is |0>_P (D level), index 1 is |1>_P (S level), sigma_z|0> = +|0>
    * subsystem 0 is the most significant Kronecker factor (ion 1 of the string is leftmost)
    * ``expm_hermitian(H, t)`` returns exp(-i t H)
"""

import functools
import logging
from collections.abc import Iterable, Mapping, Sequence
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from scipy import linalg as la

from dfsqc.toolkit.arrays import ComplexArray
from dfsqc.toolkit.errors import DimensionError, NonHermitianError

logger = logging.getLogger(__name__)

MAX_DIMENSION = 2**12
HERMITIAN_ATOL = 1e-10
NORM_ATOL = 1e-12
UNITARY_ATOL = 1e-10
PSD_ATOL = 1e-9

IDENTITY = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = {"I": IDENTITY, "X": SIGMA_X, "Y": SIGMA_Y, "Z": SIGMA_Z}


class QuantumArray(BaseModel):
    model_config = ConfigDict(frozen=True)

    data: ComplexArray

    @property
    def dim(self) -> int:
        return int(self.data.shape[0])

    def __array__(self, dtype=None, copy=None) -> np.ndarray:
        return self.data if dtype is None else self.data.astype(dtype)


class StateVector(QuantumArray):
    @model_validator(mode="after")
    def _check_normalized(self) -> "StateVector":
        if self.data.ndim != 1:
            raise ValueError(f"state vector must be 1-D, got shape {self.data.shape}")
        norm = np.linalg.norm(self.data)
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValueError(f"state vector norm {norm!r} deviates from 1")
        return self


class DensityMatrix(QuantumArray):
    @model_validator(mode="after")
    def _check_physical(self) -> "DensityMatrix":
        _require_square(self.data)
        if not is_hermitian(self.data):
            raise ValueError("density matrix is not Hermitian")
        trace = np.trace(self.data).real
        if abs(trace - 1.0) > HERMITIAN_ATOL:
            raise ValueError(f"density matrix trace {trace!r} deviates from 1")
        smallest = float(np.min(la.eigvalsh(self.data)))
        if smallest < -PSD_ATOL:
            raise ValueError(f"density matrix has negative eigenvalue {smallest!r}")
        return self

    @classmethod
    def from_state(cls, psi: Any) -> "DensityMatrix":
        vec = as_array(psi)
        return cls(data=np.outer(vec, vec.conj()))


class Unitary(QuantumArray):
    @model_validator(mode="after")
    def _check_unitary(self) -> "Unitary":
        _require_square(self.data)
        residual = np.max(np.abs(self.data.conj().T @ self.data - np.eye(self.dim)))
        if residual > UNITARY_ATOL:
            raise ValueError(f"operator is not unitary (residual {residual:.2e})")
        return self

    def restricted(self, isometry: np.ndarray) -> np.ndarray:
        """Compress onto the columns of ``isometry`` (V^dagger U V)"""
        return isometry.conj().T @ self.data @ isometry


def as_array(obj: Any) -> np.ndarray:
    if isinstance(obj, QuantumArray):
        return obj.data
    return np.asarray(obj, dtype=np.complex128)


def _require_square(matrix: np.ndarray) -> None:
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(details=f"expected a square matrix, got shape {matrix.shape}")


def is_hermitian(matrix: np.ndarray, atol: float = HERMITIAN_ATOL) -> bool:
    return bool(np.max(np.abs(matrix - matrix.conj().T), initial=0.0) <= atol)


def tensor(a: Any, b: Any, *, max_dim: int = MAX_DIMENSION) -> Any:
    """
    Kronecker product with ``a`` as the most significant factor.

    Typed inputs of the same kind (two StateVectors, two DensityMatrices, two Unitaries) give a
    result of that kind; anything else gives a plain array.

    Raises:
        DimensionError: if the product dimension exceeds ``max_dim``
    """
    left, right = as_array(a), as_array(b)
    if left.size == 0 or right.size == 0:
        raise DimensionError(details="tensor factors must have positive dimension")
    dim = left.shape[0] * right.shape[0]
    if dim > max_dim:
        raise DimensionError(details=f"tensor dimension {dim} exceeds cap {max_dim}")
    product = np.kron(left, right)
    if isinstance(a, QuantumArray) and type(a) is type(b):
        return type(a)(data=product)
    return product


def tensor_all(factors: Iterable[Any], *, max_dim: int = MAX_DIMENSION) -> np.ndarray:
    return as_array(functools.reduce(lambda x, y: tensor(x, y, max_dim=max_dim), factors))


def operator_on(n_qubits: int, local_ops: Mapping[int, np.ndarray]) -> np.ndarray:
    """Embed single-qubit operators at the given qubit indices, identity elsewhere"""
    for index in local_ops:
        if not 0 <= index < n_qubits:
            raise DimensionError(details=f"qubit index {index} outside register of {n_qubits}")
    return tensor_all(local_ops.get(k, IDENTITY) for k in range(n_qubits))


def basis_state(bits: str) -> np.ndarray:
    vec = np.zeros(2 ** len(bits), dtype=np.complex128)
    vec[int(bits, 2)] = 1.0
    return vec


def expm_hermitian(h: Any, t: float) -> Unitary:
    """
    Return exp(-i t H) through the eigendecomposition of H.

    Raises:
        NonHermitianError: if H deviates from its adjoint by more than 1e-10
    """
    matrix = as_array(h)
    _require_square(matrix)
    if not is_hermitian(matrix):
        raise NonHermitianError(details=f"max |H - H^dagger| = {np.max(np.abs(matrix - matrix.conj().T)):.2e}")
    eigvals, eigvecs = la.eigh((matrix + matrix.conj().T) / 2)
    phases = np.exp(-1j * t * eigvals)
    return Unitary(data=(eigvecs * phases) @ eigvecs.conj().T)


def fidelity(rho: Any, psi: Any) -> float:
    """<psi|rho|psi>, clipped to [0, 1]"""
    matrix, vec = as_array(rho), as_array(psi)
    if matrix.shape != (vec.shape[0], vec.shape[0]):
        raise DimensionError(details=f"state of dim {vec.shape[0]} against matrix of shape {matrix.shape}")
    value = np.vdot(vec, matrix @ vec).real
    return float(np.clip(value, 0.0, 1.0))


def partial_trace(rho: Any, keep: Iterable[int], dims: Sequence[int] | None = None) -> Any:
    """
    Trace out every subsystem not in ``keep``.

    Args:
        rho: density matrix over the subsystems ``dims`` (all qubits when omitted)
        keep: indices of the subsystems to keep; the result keeps their original order
        dims: local dimension of each subsystem

    Returns:
        DensityMatrix when given one, otherwise a plain array
    """
    matrix = as_array(rho)
    _require_square(matrix)
    if dims is None:
        n_qubits = int(round(np.log2(matrix.shape[0])))
        dims = [2] * n_qubits
    dims = list(dims)
    if int(np.prod(dims)) != matrix.shape[0]:
        raise DimensionError(details=f"subsystem dims {dims} do not match matrix dim {matrix.shape[0]}")
    kept = sorted(set(keep))
    if any(not 0 <= k < len(dims) for k in kept):
        raise DimensionError(details=f"invalid subsystem indices {kept} for {len(dims)} subsystems")

    n = len(dims)
    tensor_form = matrix.reshape(dims + dims)
    row_labels = list(range(n))
    col_labels = [k if k not in kept else n + k for k in range(n)]
    out_labels = kept + [n + k for k in kept]
    reduced = np.einsum(tensor_form, row_labels + col_labels, out_labels)
    kept_dim = int(np.prod([dims[k] for k in kept])) if kept else 1
    reduced = reduced.reshape(kept_dim, kept_dim)
    if isinstance(rho, DensityMatrix):
        return DensityMatrix(data=reduced)
    return reduced


def canonicalize_phase(obj: Any, atol: float = 1e-12) -> np.ndarray:
    """Remove the global phase so that the first entry with modulus above ``atol`` is real-positive"""
    arr = as_array(obj)
    flat = arr.reshape(-1)
    nonzero = np.flatnonzero(np.abs(flat) > atol)
    if nonzero.size == 0:
        return arr.copy()
    pivot = flat[nonzero[0]]
    return arr * (abs(pivot) / pivot)


def equal_up_to_phase(a: Any, b: Any, atol: float = 1e-10) -> bool:
    left, right = canonicalize_phase(a), canonicalize_phase(b)
    return left.shape == right.shape and bool(np.max(np.abs(left - right), initial=0.0) < atol)


def unitary_overlap(u: Any, v: Any) -> float:
    """|Tr(U^dagger V)| / d, the phase-insensitive overlap of two operators"""
    left, right = as_array(u), as_array(v)
    return float(abs(np.trace(left.conj().T @ right)) / left.shape[0])


def unitary_trace_distance(u: Any, v: Any) -> float:
    """Trace distance between the normalized Choi states of two unitaries"""
    overlap = min(unitary_overlap(u, v), 1.0)
    return float(np.sqrt(max(0.0, 1.0 - overlap**2)))


def average_gate_fidelity(u: Any, v: Any) -> float:
    """Haar-averaged fidelity between two unitaries of dimension d: (d + |Tr U^dagger V|^2) / (d (d + 1))"""
    d = as_array(u).shape[0]
    trace_sq = (unitary_overlap(u, v) * d) ** 2
    return float((d + trace_sq) / (d * (d + 1)))


def von_neumann_entropy(rho: Any) -> float:
    eigvals = la.eigvalsh(as_array(rho))
    eigvals = eigvals[eigvals > 1e-15]
    return float(-np.sum(eigvals * np.log(eigvals)))
