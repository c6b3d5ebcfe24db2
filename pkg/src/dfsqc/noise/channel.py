import logging
from typing import Any

import numpy as np

from dfsqc.encoding.dfs import encode, excitation_balance
from dfsqc.gates.pulses import PulseKind, PulseSequence
from dfsqc.noise.model import NoiseModel
from dfsqc.noise.perturbations import noisy_pulse_unitary
from dfsqc.toolkit.errors import DimensionError, InvalidParameterError
from dfsqc.toolkit.parallel import parallel_map
from dfsqc.toolkit.quantum import DensityMatrix, as_array

logger = logging.getLogger(__name__)

# realisations averaged when a caller leaves the sample count open
DEFAULT_NOISE_SAMPLES = 200


class SampledChannel:
    """
    Mixture of unitaries, one per noise realisation: rho -> mean_k U_k rho U_k^dagger.

    Realisation ``k`` draws from ``numpy.random.default_rng([seed, k])``: first the collective phase
    of the sequence, then one AC-Stark jitter per Z pulse in sequence order. The collective phase
    is spread over the ops in proportion to their durations.
    """

    def __init__(self, unitaries: np.ndarray) -> None:
        self.unitaries = unitaries

    @property
    def n_samples(self) -> int:
        return int(self.unitaries.shape[0])

    @property
    def dim(self) -> int:
        return int(self.unitaries.shape[1])

    @classmethod
    def build(cls, seq: PulseSequence, model: NoiseModel, n_samples: int = DEFAULT_NOISE_SAMPLES, threads: int = 1) -> "SampledChannel":
        if n_samples < 1:
            raise InvalidParameterError(details=f"n_samples must be at least 1, got {n_samples}")
        n_ions = seq.n_ions
        # coherent errors are identical in every realisation
        static = [noisy_pulse_unitary(op, n_ions, model).data for op in seq.ops]
        balance = excitation_balance(seq.layout.physical_dim)
        total = seq.total_duration
        shares = [op.duration / total if total > 0 else 1 / len(seq.ops) for op in seq.ops] if seq.ops else []
        effective = n_samples if model.is_stochastic else 1

        def realise(index: int) -> np.ndarray:
            rng = np.random.default_rng([model.seed, index])
            phi = rng.normal(0.0, model.collective_phase_std) if model.collective_phase_std > 0 else 0.0
            unitary = np.eye(seq.layout.physical_dim, dtype=np.complex128)
            for op, base, share in zip(seq.ops, static, shares):
                if op.kind == PulseKind.AC_STARK_Z and model.ac_stark_phase_jitter_std > 0:
                    offset = rng.normal(0.0, model.ac_stark_phase_jitter_std)
                    base = noisy_pulse_unitary(op, n_ions, model, angle_offset=offset).data
                unitary = base @ unitary
                if phi:
                    unitary = np.exp(-0.5j * phi * share * balance)[:, None] * unitary
            return unitary

        logger.debug(f"Sampling {effective} realisations of a {len(seq.ops)}-op sequence")
        unitaries = np.stack(parallel_map(realise, range(effective), threads=threads))
        return cls(unitaries)

    def apply(self, rho: Any) -> np.ndarray:
        matrix = as_array(rho)
        if matrix.shape != (self.dim, self.dim):
            raise DimensionError(details=f"channel on dim {self.dim} got a matrix of shape {matrix.shape}")
        out = np.einsum("kab,bc,kdc->ad", self.unitaries, matrix, self.unitaries.conj()) / self.n_samples
        return (out + out.conj().T) / 2

    def apply_state(self, psi: Any) -> DensityMatrix:
        vec = as_array(psi)
        if vec.shape != (self.dim,):
            raise DimensionError(details=f"channel on dim {self.dim} got a state of shape {vec.shape}")
        outputs = self.unitaries @ vec
        rho = np.einsum("ka,kb->ab", outputs, outputs.conj()) / self.n_samples
        return DensityMatrix(data=(rho + rho.conj().T) / 2)

    def __call__(self, rho: Any) -> np.ndarray:
        return self.apply(rho)


def sample_noisy_channel(seq: PulseSequence, model: NoiseModel, n_samples: int, psi: Any = None, threads: int = 1) -> DensityMatrix:
    """
    Output state of ``seq`` averaged over ``n_samples`` noise realisations.

    ``psi`` defaults to the encoded all-zero logical state.
    """
    if psi is None:
        psi = encode("0" * seq.layout.n_logical, seq.layout)
    return SampledChannel.build(seq, model, n_samples=n_samples, threads=threads).apply_state(psi)
