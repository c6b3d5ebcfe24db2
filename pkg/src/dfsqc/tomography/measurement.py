import itertools
import logging
import math
from collections.abc import Sequence
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from dfsqc.toolkit.errors import DimensionError, InvalidParameterError, InvalidProbabilityError
from dfsqc.toolkit.parallel import parallel_map
from dfsqc.toolkit.quantum import IDENTITY, as_array, tensor_all

logger = logging.getLogger(__name__)

NEGATIVE_PROBABILITY_TOLERANCE = 1e-9

_HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)
_S_DAGGER = np.diag([1, -1j]).astype(np.complex128)
# Rotations taking each Pauli eigenbasis to the computational basis
BASIS_CHANGE = {"X": _HADAMARD, "Y": _HADAMARD @ _S_DAGGER, "Z": IDENTITY}


class MeasurementSetting(BaseModel):
    model_config = ConfigDict(frozen=True)

    bases: str = Field(min_length=1)

    @field_validator("bases")
    @classmethod
    def _check_bases(cls, value: str) -> str:
        if set(value) - set("XYZ"):
            raise ValueError(f"bases must be drawn from X, Y, Z, got {value!r}")
        return value

    @property
    def n_qubits(self) -> int:
        return len(self.bases)

    def rotation(self) -> np.ndarray:
        return tensor_all(BASIS_CHANGE[b] for b in self.bases)

    def __str__(self) -> str:
        return self.bases


def full_setting_set(n_qubits: int) -> list[MeasurementSetting]:
    """All 3^n settings in lexicographic X < Y < Z order"""
    return [MeasurementSetting(bases="".join(combo)) for combo in itertools.product("XYZ", repeat=n_qubits)]


class TomographyDataset(BaseModel):
    """
    Outcome histograms per setting.

    Shot data lives in ``counts`` (bitstring -> count, ion 0 leftmost). Exact-statistics datasets
    have ``shots_per_setting = None`` and carry outcome probabilities in ``probabilities`` instead.
    """

    n_qubits: int = Field(ge=1)
    shots_per_setting: int | None = Field(default=None, ge=1)
    settings: list[str]
    counts: dict[str, dict[str, int]] = Field(default_factory=dict)
    probabilities: dict[str, list[float]] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_histograms(self) -> "TomographyDataset":
        for label in self.settings:
            MeasurementSetting(bases=label)
            if len(label) != self.n_qubits:
                raise ValueError(f"setting {label} does not cover {self.n_qubits} qubits")
            if self.shots_per_setting is None:
                if len(self.probabilities.get(label, [])) != 2**self.n_qubits:
                    raise ValueError(f"setting {label} lacks an exact outcome distribution")
                continue
            total = sum(self.counts.get(label, {}).values())
            if total != self.shots_per_setting:
                raise ValueError(f"setting {label} histogram sums to {total}, expected {self.shots_per_setting}")
        return self

    @property
    def is_exact(self) -> bool:
        return self.shots_per_setting is None

    def frequencies(self, label: str) -> np.ndarray:
        """Outcome frequencies indexed by the integer value of the bitstring"""
        if self.is_exact:
            return np.asarray(self.probabilities[label], dtype=float)
        freqs = np.zeros(2**self.n_qubits)
        for bits, count in self.counts[label].items():
            freqs[int(bits, 2)] = count
        return freqs / self.shots_per_setting


def measurement_probabilities(rho: Any, setting: MeasurementSetting) -> np.ndarray:
    """
    Outcome distribution of a projective measurement in ``setting``.

    Raises:
        InvalidProbabilityError: if any probability is below -1e-9; smaller negatives are clamped
    """
    matrix = as_array(rho)
    if matrix.shape != (2**setting.n_qubits,) * 2:
        raise DimensionError(details=f"setting {setting} against a matrix of shape {matrix.shape}")
    rotation = setting.rotation()
    probs = np.einsum("ij,jk,ik->i", rotation, matrix, rotation.conj()).real
    if probs.min() < -NEGATIVE_PROBABILITY_TOLERANCE:
        raise InvalidProbabilityError(details=f"probability {probs.min():.3e} in setting {setting}")
    probs = np.clip(probs, 0.0, None)
    return probs / probs.sum()


def simulate_measurement(rho: Any, setting: MeasurementSetting, shots: int, seed: int | Sequence[int]) -> dict[str, int]:
    """Multinomial outcome histogram over bitstrings; outcomes never observed are omitted"""
    if shots < 1:
        raise InvalidParameterError(details=f"shots must be at least 1, got {shots}")
    probs = measurement_probabilities(rho, setting)
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs)
    width = setting.n_qubits
    return {format(index, f"0{width}b"): int(count) for index, count in enumerate(counts) if count}


def collect_dataset(
    rho: Any, shots: int | None, seed: int | Sequence[int] = 0, settings: list[MeasurementSetting] | None = None, threads: int = 1
) -> TomographyDataset:
    """
    Measure ``rho`` in every setting (the full 3^n set by default).

    ``shots=None`` records exact outcome probabilities. Setting ``i`` draws its shots from
    ``default_rng([*seed, i])`` (a plain integer seed counts as a one-element list).
    """
    matrix = as_array(rho)
    n_qubits = int(round(math.log2(matrix.shape[0])))
    settings = settings or full_setting_set(n_qubits)
    labels = [s.bases for s in settings]
    if shots is None:
        probabilities = {s.bases: measurement_probabilities(matrix, s).tolist() for s in settings}
        return TomographyDataset(n_qubits=n_qubits, settings=labels, probabilities=probabilities)

    base = [seed] if isinstance(seed, int) else list(seed)
    histograms = parallel_map(lambda item: simulate_measurement(matrix, item[1], shots, [*base, item[0]]), list(enumerate(settings)), threads=threads)
    return TomographyDataset(n_qubits=n_qubits, shots_per_setting=shots, settings=labels, counts=dict(zip(labels, histograms)))
