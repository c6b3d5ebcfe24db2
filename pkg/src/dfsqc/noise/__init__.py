from dfsqc.noise.channel import DEFAULT_NOISE_SAMPLES, SampledChannel, sample_noisy_channel
from dfsqc.noise.model import NoiseModel
from dfsqc.noise.perturbations import addressing_crosstalk, imbalance_perturbation, noisy_pulse_unitary, pulse_weights

__all__ = [
    "NoiseModel",
    "DEFAULT_NOISE_SAMPLES",
    "SampledChannel",
    "sample_noisy_channel",
    "addressing_crosstalk",
    "imbalance_perturbation",
    "noisy_pulse_unitary",
    "pulse_weights",
]
