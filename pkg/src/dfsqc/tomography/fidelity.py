import logging
import math
from collections.abc import Sequence
from typing import Any

import numpy as np
from pydantic import BaseModel

from dfsqc.tomography.process import Channel, ChiMatrix, process_tomography
from dfsqc.toolkit.errors import InvalidParameterError
from dfsqc.toolkit.quantum import as_array

logger = logging.getLogger(__name__)

DEFAULT_BATCH = 10_000
MIN_SAMPLES = 1000
PERMANENCE_FLOOR = 1e-12


class GateFidelityEstimate(BaseModel):
    """
    Haar-averaged output fidelity against an ideal unitary.

    ``mean``/``stderr`` are the in-DFS values (each sample renormalized by its success
    probability); ``overall`` is the unnormalized mean, which is what a trace-preserving
    channel reports as its mean gate fidelity.
    """

    n_samples: int
    mean: float
    stderr: float
    mean_permanence: float
    permanence_stderr: float
    overall: float
    overall_stderr: float


def haar_states(dim: int, n_samples: int, rng: np.random.Generator) -> np.ndarray:
    """Normalized complex Gaussian vectors, shape (n_samples, dim)"""
    ginibre = rng.standard_normal((n_samples, dim)) + 1j * rng.standard_normal((n_samples, dim))
    return ginibre / np.linalg.norm(ginibre, axis=1, keepdims=True)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """QR of a Ginibre matrix with the phases of R's diagonal moved into Q"""
    ginibre = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(ginibre)
    diagonal = np.diag(r)
    return q * (diagonal / np.abs(diagonal))


def _stderr(values: np.ndarray) -> float:
    if values.size < 2:
        return 0.0
    return float(np.std(values, ddof=1) / math.sqrt(values.size))


def sample_fidelities(choi_tensor: np.ndarray, ideal: np.ndarray, states: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Per-state unnormalized fidelity <psi|U^dagger E(|psi><psi|) U|psi> and success probability Tr E(|psi><psi|).
    """
    d = ideal.shape[0]
    targets = states @ ideal.T
    joint = np.einsum("na,ni->nai", targets.conj(), states).reshape(len(states), d * d)
    choi = choi_tensor.reshape(d * d, d * d)
    fidelities = np.einsum("nx,xy,ny->n", joint, choi, joint.conj()).real
    success = np.einsum("aiaj,ni,nj->n", choi_tensor, states, states.conj()).real
    return fidelities, success


def mean_gate_fidelity(
    channel: ChiMatrix | Channel, ideal: Any, n_samples: int = 200_000, seed: int | Sequence[int] = 0, batch: int = DEFAULT_BATCH
) -> GateFidelityEstimate:
    """
    Mean output fidelity over Haar-random pure inputs.

    A callable channel is first turned into its chi matrix with exact statistics; the estimate is
    then evaluated in vectorized batches from one ``default_rng(seed)`` stream.
    """
    if n_samples < MIN_SAMPLES:
        raise InvalidParameterError(details=f"mean_gate_fidelity needs at least {MIN_SAMPLES} samples, got {n_samples}")
    unitary = as_array(ideal)
    d = unitary.shape[0]
    n_qubits = int(round(math.log2(d)))
    chi = channel if isinstance(channel, ChiMatrix) else process_tomography(channel, n_qubits=n_qubits)
    choi_tensor = chi.choi_tensor()
    rng = np.random.default_rng(seed)

    fidelities, success = [], []
    for start in range(0, n_samples, batch):
        states = haar_states(d, min(batch, n_samples - start), rng)
        f, p = sample_fidelities(choi_tensor, unitary, states)
        fidelities.append(f)
        success.append(p)
    overall = np.concatenate(fidelities)
    permanence = np.concatenate(success)
    accepted = permanence > PERMANENCE_FLOOR
    in_dfs = overall[accepted] / permanence[accepted]
    logger.debug(f"Haar estimate over {n_samples} states: {in_dfs.mean():.6f}")
    return GateFidelityEstimate(
        n_samples=n_samples,
        mean=float(in_dfs.mean()) if in_dfs.size else 0.0,
        stderr=_stderr(in_dfs),
        mean_permanence=float(permanence.mean()),
        permanence_stderr=_stderr(permanence),
        overall=float(overall.mean()),
        overall_stderr=_stderr(overall),
    )
