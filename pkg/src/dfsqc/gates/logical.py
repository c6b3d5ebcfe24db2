"""
Logical gate set realised on ion pairs.

For a pair (a, b) encoding |0>_L = |10>, |1>_L = |01>:
    sigma_z on b restricts to +sigma_z_L, sigma_z on a restricts to -sigma_z_L
    sigma_phi x sigma_phi on (a, b) restricts to sigma_x_L for every common axis phase phi
"""

import logging
import math

from dfsqc.encoding.register import LogicalRegister
from dfsqc.gates.params import GateParams
from dfsqc.gates.pulses import PulseKind, PulseOp, pulse_unitary
from dfsqc.toolkit.quantum import Unitary

logger = logging.getLogger(__name__)


def _register_for(register: LogicalRegister | None, *indices: int) -> LogicalRegister:
    register = register or LogicalRegister.linear(max(indices) + 1)
    for index in indices:
        register.check_logical_index(index)
    return register


def z_op(theta: float, logical_qubit: int, register: LogicalRegister, params: GateParams | None = None, label: str | None = None) -> PulseOp:
    params = params or GateParams()
    ion = register.pairs[logical_qubit][1]
    return PulseOp(kind=PulseKind.AC_STARK_Z, targets=(ion,), angle=theta, duration=params.stark_duration(theta), label=label)


def x_op(
    theta: float, logical_qubit: int, register: LogicalRegister, params: GateParams | None = None, axis_phase: float = 0.0, label: str | None = None
) -> PulseOp:
    params = params or GateParams()
    return PulseOp(
        kind=PulseKind.MS_ROTATION, targets=register.pairs[logical_qubit], angle=theta, phase=axis_phase, duration=params.tau_ms, label=label
    )


def cp_op(theta: float, pair: tuple[int, int], register: LogicalRegister, params: GateParams | None = None, label: str | None = None) -> PulseOp:
    params = params or GateParams()
    return PulseOp(kind=PulseKind.CP_GATE, targets=register.center_ions(*pair), angle=theta, duration=params.tau_cp, label=label)


def z_rotation_logical(theta: float, logical_qubit: int, register: LogicalRegister | None = None) -> Unitary:
    """exp(-i theta/2 sigma_z) on the second ion of the pair, i.e. Z(theta) on the logical qubit"""
    register = _register_for(register, logical_qubit)
    return pulse_unitary(z_op(theta, logical_qubit, register), int(register.n_physical))


def x_rotation_logical(theta: float, logical_qubit: int, axis_phase: float = 0.0, register: LogicalRegister | None = None) -> Unitary:
    """
    Moelmer-Soerensen rotation exp(-i theta/2 sigma_phi x sigma_phi) on the pair.

    On the DFS this is exp(-i theta/2 sigma_x_L) whatever ``axis_phase`` is; the phase only acts
    on the |00>, |11> block of the pair.
    """
    register = _register_for(register, logical_qubit)
    return pulse_unitary(x_op(theta, logical_qubit, register, axis_phase=axis_phase), int(register.n_physical))


def y_rotation_logical(theta: float, logical_qubit: int, register: LogicalRegister | None = None) -> Unitary:
    """Composite Z(pi/2) X(theta) Z(-pi/2), exp(-i theta/2 sigma_y_L) on the DFS"""
    register = _register_for(register, logical_qubit)
    before = z_rotation_logical(-0.5 * math.pi, logical_qubit, register)
    rotation = x_rotation_logical(theta, logical_qubit, register=register)
    after = z_rotation_logical(0.5 * math.pi, logical_qubit, register)
    return Unitary(data=after.data @ rotation.data @ before.data)


def cp_gate_logical(theta: float, pair: tuple[int, int], register: LogicalRegister | None = None) -> Unitary:
    """
    exp(-i theta/2 sigma_z x sigma_z) on the facing ions of two adjacent logical qubits.

    The facing ions are the second ion of the left pair and the first ion of the right pair, so
    on the DFS the gate is exp(+i theta/2 sigma_z_L x sigma_z_L).

    Raises:
        LayoutError: if the logical qubits are not adjacent
    """
    register = _register_for(register, *pair)
    return pulse_unitary(cp_op(theta, pair, register), int(register.n_physical))
