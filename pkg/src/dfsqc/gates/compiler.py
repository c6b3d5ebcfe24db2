import logging
import math
from typing import TYPE_CHECKING, Any

import numpy as np

from dfsqc.encoding.register import LogicalRegister
from dfsqc.gates.logical import cp_op, x_op, z_op
from dfsqc.gates.params import GateParams
from dfsqc.gates.pulses import PulseKind, PulseOp, PulseSequence
from dfsqc.toolkit.errors import DimensionError, LayoutError
from dfsqc.toolkit.quantum import DensityMatrix, StateVector, as_array

if TYPE_CHECKING:
    from dfsqc.noise.model import NoiseModel

logger = logging.getLogger(__name__)

PI = math.pi

# Logical basis |control target>, control most significant
U_CNOT = np.array(
    [
        [0, -1, 0, 0],
        [1j, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1j],
    ],
    dtype=np.complex128,
)

# (gate, qubit role, angle) in time order; "c"/"t" are control/target, "ct" the phase gate.
# Restricted to the DFS the product is exp(-i pi/4) U_CNOT.
CNOT_TABLE: tuple[tuple[str, str, float, str], ...] = (
    ("X", "t", PI / 2, "ramsey"),
    ("CP", "ct", -PI / 4, "phase-half"),
    ("X", "c", PI, "echo"),
    ("X", "t", PI, "echo"),
    ("CP", "ct", -PI / 4, "phase-half"),
    ("Z", "t", -PI / 2, "ramsey-y"),
    ("X", "t", PI / 2, "ramsey-y"),
    ("Z", "t", PI / 2, "ramsey-y"),
    ("X", "c", PI, "echo-return"),
)


def compile_cnot(control: int, target: int, params: GateParams | None = None, register: LogicalRegister | None = None) -> PulseSequence:
    """
    Pulse sequence of the controlled-NOT.

    A Ramsey pair on the target encloses the phase gate, split in two halves around a spin echo on
    both logical qubits; the closing Ramsey pulse is the composite Z X Z (a y rotation) and a final
    pi pulse returns the echoed control.

    Raises:
        LayoutError: if control and target coincide or are not adjacent
    """
    params = params or GateParams()
    register = register or LogicalRegister.linear(max(control, target) + 1)
    if control == target:
        raise LayoutError(details="control and target must differ")
    register.check_logical_index(control)
    register.check_logical_index(target)

    roles = {"c": control, "t": target}
    ops: list[PulseOp] = []
    for gate, role, angle, label in CNOT_TABLE:
        if gate == "X":
            ops.append(x_op(angle, roles[role], register, params, label=label))
        elif gate == "Z":
            ops.append(z_op(angle, roles[role], register, params, label=label))
        else:
            ops.append(cp_op(angle, (control, target), register, params, label=label))
    logger.debug(f"Compiled CNOT c={control} t={target} into {len(ops)} ops")
    return PulseSequence(register=register, ops=ops)


def compile_bell(control: int, target: int, params: GateParams | None = None, register: LogicalRegister | None = None) -> PulseSequence:
    """X(pi/2) on the control followed by the CNOT"""
    params = params or GateParams()
    register = register or LogicalRegister.linear(max(control, target) + 1)
    register.check_logical_index(control)
    opening = PulseSequence(register=register, ops=[x_op(PI / 2, control, register, params, label="bell-x")])
    return opening.then(compile_cnot(control, target, params, register))


def preparation_sequence(logical_bits: str, register: LogicalRegister | None = None, params: GateParams | None = None) -> PulseSequence:
    """
    Carrier pi flips that take the pumped string (all ions in |1>_P) to the encoded ``logical_bits``.

    |0>_L = |10> needs the second ion flipped, |1>_L = |01> the first.
    """
    params = params or GateParams()
    register = register or LogicalRegister.linear(len(logical_bits))
    register.physical_bits(logical_bits)
    ops = []
    for (first, second), bit in zip(register.pairs, logical_bits):
        ion = second if bit == "0" else first
        ops.append(PulseOp(kind=PulseKind.PHYSICAL_FLIP, targets=(ion,), angle=PI, duration=params.flip_duration(PI), label="prepare"))
    return PulseSequence(register=register, ops=ops)


def pumped_state(register: LogicalRegister) -> StateVector:
    vec = np.zeros(register.physical_dim, dtype=np.complex128)
    vec[-1] = 1.0
    return StateVector(data=vec)


def apply_sequence(
    seq: PulseSequence, psi: Any, noise: "NoiseModel | None" = None, n_samples: int | None = None, threads: int = 1
) -> StateVector | DensityMatrix:
    """
    Apply the ops in order.

    Without noise the result is a StateVector; with a NoiseModel the sequence becomes a sampled
    mixture of unitaries and the result is a DensityMatrix. ``n_samples`` defaults to
    DEFAULT_NOISE_SAMPLES realisations.
    """
    vec = as_array(psi)
    if vec.shape != (seq.layout.physical_dim,):
        raise DimensionError(details=f"state of shape {vec.shape} against a {seq.n_ions}-ion sequence")
    if noise is None:
        return StateVector(data=seq.unitary().data @ vec)

    from dfsqc.noise.channel import DEFAULT_NOISE_SAMPLES, SampledChannel

    channel = SampledChannel.build(seq, noise, n_samples=DEFAULT_NOISE_SAMPLES if n_samples is None else n_samples, threads=threads)
    return channel.apply_state(vec)


def bell_states() -> dict[str, np.ndarray]:
    """Logical Bell vectors over |00>, |01>, |10>, |11>"""
    s = 1 / math.sqrt(2)
    return {
        "phi+": np.array([s, 0, 0, s], dtype=np.complex128),
        "phi-": np.array([s, 0, 0, -s], dtype=np.complex128),
        "psi+": np.array([0, s, s, 0], dtype=np.complex128),
        "psi-": np.array([0, s, -s, 0], dtype=np.complex128),
    }


# Logical input -> Bell state produced by X_c(pi/2) followed by the CNOT
BELL_MAP = {"00": "psi-", "01": "phi-", "10": "psi+", "11": "phi+"}
