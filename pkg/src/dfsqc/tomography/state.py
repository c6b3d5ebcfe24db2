import functools
import itertools
import logging

import numpy as np
from scipy import linalg as la

from dfsqc.tomography.measurement import MeasurementSetting, TomographyDataset
from dfsqc.toolkit.errors import CoverageError
from dfsqc.toolkit.quantum import PAULIS, DensityMatrix, tensor_all

logger = logging.getLogger(__name__)

PAULI_LABELS = "IXYZ"


@functools.lru_cache(maxsize=8)
def pauli_strings(n_qubits: int) -> tuple[str, ...]:
    return tuple("".join(p) for p in itertools.product(PAULI_LABELS, repeat=n_qubits))


@functools.lru_cache(maxsize=8)
def pauli_matrices(n_qubits: int) -> np.ndarray:
    """Stack of Pauli products, ordered like ``pauli_strings``"""
    return np.stack([tensor_all(PAULIS[p] for p in label) for label in pauli_strings(n_qubits)])


@functools.lru_cache(maxsize=8)
def _parity_signs(n_qubits: int) -> np.ndarray:
    """signs[mask, outcome] = (-1)^popcount(mask & outcome)"""
    return la.hadamard(2**n_qubits)


def pauli_expectations(data: TomographyDataset) -> np.ndarray:
    """
    <P> for every Pauli product, averaged over all settings compatible with it.

    Raises:
        CoverageError: if some Pauli product has no compatible setting
    """
    n = data.n_qubits
    signs = _parity_signs(n)
    index = {label: k for k, label in enumerate(pauli_strings(n))}
    sums = np.zeros(4**n)
    hits = np.zeros(4**n, dtype=int)
    for label in data.settings:
        parities = signs @ data.frequencies(label)
        for mask in range(2**n):
            pauli = "".join(label[k] if (mask >> (n - 1 - k)) & 1 else "I" for k in range(n))
            sums[index[pauli]] += parities[mask]
            hits[index[pauli]] += 1
    missing = [p for p, count in zip(pauli_strings(n), hits) if count == 0]
    if missing:
        raise CoverageError(details=f"{len(missing)} Pauli products unmeasured, e.g. {missing[0]}")
    return sums / hits


def project_to_physical(matrix: np.ndarray) -> np.ndarray:
    """
    Closest (Frobenius) positive semi-definite trace-one matrix.

    Eigenvalues are sorted and the most negative ones zeroed while their weight is spread evenly
    over the remaining ones.
    """
    hermitian = (matrix + matrix.conj().T) / 2
    hermitian = hermitian / np.trace(hermitian).real
    eigvals, eigvecs = la.eigh(hermitian)
    if eigvals.min() >= 0:
        return hermitian
    eigvals = eigvals[::-1].copy()
    eigvecs = eigvecs[:, ::-1]
    kept = len(eigvals)
    accumulator = 0.0
    while eigvals[kept - 1] + accumulator / kept < 0:
        accumulator += eigvals[kept - 1]
        kept -= 1
    projected = np.zeros_like(eigvals)
    projected[:kept] = eigvals[:kept] + accumulator / kept
    return (eigvecs * projected) @ eigvecs.conj().T


def linear_inversion(data: TomographyDataset) -> np.ndarray:
    expectations = pauli_expectations(data)
    return np.einsum("p,pij->ij", expectations, pauli_matrices(data.n_qubits)) / 2**data.n_qubits


def mle_refine(rho: np.ndarray, data: TomographyDataset, iterations: int = 500, dilution: float = 0.5, tol: float = 1e-10) -> np.ndarray:
    """
    Diluted R rho R iteration towards the maximum-likelihood state.

    rho <- (1 - a) rho + a/2 (rho R + R rho), renormalized, with R = sum_i f_i / p_i Pi_i over all
    setting outcomes.
    """
    rotations = np.stack([MeasurementSetting(bases=label).rotation() for label in data.settings])
    freqs = np.stack([data.frequencies(label) for label in data.settings])
    n_settings = len(data.settings)
    current = rho
    for iteration in range(iterations):
        probs = np.einsum("sij,jk,sik->si", rotations, current, rotations.conj()).real
        ratio = np.divide(freqs, probs, out=np.zeros_like(freqs), where=probs > 1e-15)
        r_op = np.einsum("sbi,sb,sbj->ij", rotations.conj(), ratio, rotations) / n_settings
        updated = (1 - dilution) * current + dilution / 2 * (current @ r_op + r_op @ current)
        updated = updated / np.trace(updated).real
        change = float(np.max(np.abs(updated - current)))
        current = updated
        if change < tol:
            logger.debug(f"MLE converged after {iteration + 1} iterations")
            break
    return (current + current.conj().T) / 2


def reconstruct_state(data: TomographyDataset, mle: bool = False) -> DensityMatrix:
    """
    Linear inversion from Pauli expectations, then projection to the nearest physical state.

    With exact probabilities this reproduces the measured state. ``mle`` adds an iterative
    maximum-likelihood refinement starting from the projected estimate.

    Raises:
        CoverageError: if the settings do not determine every Pauli expectation
    """
    estimate = project_to_physical(linear_inversion(data))
    if mle:
        estimate = mle_refine(estimate, data)
    return DensityMatrix(data=estimate)
