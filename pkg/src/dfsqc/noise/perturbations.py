"""Coherent pulse errors: addressing crosstalk and intensity imbalance"""

import logging

from dfsqc.gates.pulses import PulseKind, PulseOp, pulse_unitary
from dfsqc.noise.model import NoiseModel
from dfsqc.toolkit.errors import InvalidParameterError
from dfsqc.toolkit.quantum import Unitary

logger = logging.getLogger(__name__)


def neighbours(op: PulseOp, n_ions: int) -> list[int]:
    low, high = min(op.targets), max(op.targets)
    return [ion for ion in (low - 1, high + 1) if 0 <= ion < n_ions]


def pulse_weights(op: PulseOp, n_ions: int, ratio: float = 0.0, epsilon: float = 0.0) -> dict[int, float]:
    """
    Relative Rabi frequency per lit ion.

    Targets of a bichromatic pulse get (1 + eps/2, 1 - eps/2); each neighbour of the addressed
    ions gets ``ratio``.
    """
    if op.kind in (PulseKind.MS_ROTATION, PulseKind.CP_GATE):
        a, b = op.targets
        weights = {a: 1.0 + epsilon / 2, b: 1.0 - epsilon / 2}
    else:
        weights = dict.fromkeys(op.targets, 1.0)
    if ratio:
        for ion in neighbours(op, n_ions):
            weights[ion] = ratio
    return weights


def addressing_crosstalk(op: PulseOp, ratio: float, n_ions: int) -> Unitary:
    """
    The pulse with residual light on the neighbouring ions.

    Neighbours join the generator at Rabi frequency ``ratio`` times the target's; an op with no
    neighbour in the string is returned ideal.
    """
    if not neighbours(op, n_ions):
        logger.debug(f"{op.kind} on {op.targets} has no neighbour in a string of {n_ions}")
    return pulse_unitary(op, n_ions, weights=pulse_weights(op, n_ions, ratio=ratio))


def imbalance_perturbation(op: PulseOp, epsilon: float, n_ions: int, stark_coefficient: float = 1.0) -> Unitary:
    """
    Bichromatic pulse with unequal Rabi frequencies on its two ions.

    S = s_a + s_b becomes (1 + eps/2) s_a + (1 - eps/2) s_b, and the unequal light shifts add a
    differential term stark_coefficient * eps * (sigma_z^a - sigma_z^b)/2 to the generator.
    """
    if op.kind not in (PulseKind.MS_ROTATION, PulseKind.CP_GATE):
        raise InvalidParameterError(details=f"intensity imbalance applies to bichromatic pulses, got {op.kind}")
    return pulse_unitary(op, n_ions, weights=pulse_weights(op, n_ions, epsilon=epsilon), differential_shift=stark_coefficient * epsilon)


def noisy_pulse_unitary(op: PulseOp, n_ions: int, model: NoiseModel, angle_offset: float = 0.0) -> Unitary:
    """One realisation of ``op`` under every coherent error in ``model``"""
    bichromatic = op.kind in (PulseKind.MS_ROTATION, PulseKind.CP_GATE)
    epsilon = model.intensity_imbalance if bichromatic else 0.0
    weights = pulse_weights(op, n_ions, ratio=model.addressing_ratio, epsilon=epsilon)
    shift = model.imbalance_stark_coefficient * epsilon if bichromatic else 0.0
    return pulse_unitary(op, n_ions, weights=weights, differential_shift=shift, angle=op.angle + angle_offset)
