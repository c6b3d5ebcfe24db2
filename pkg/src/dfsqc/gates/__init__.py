from dfsqc.gates.compiler import BELL_MAP, CNOT_TABLE, U_CNOT, apply_sequence, bell_states, compile_bell, compile_cnot, preparation_sequence, pumped_state
from dfsqc.gates.logical import cp_gate_logical, x_rotation_logical, y_rotation_logical, z_rotation_logical
from dfsqc.gates.params import GateParams
from dfsqc.gates.pulses import PulseKind, PulseOp, PulseSequence, pulse_generator, pulse_unitary

__all__ = [
    "GateParams",
    "PulseKind",
    "PulseOp",
    "PulseSequence",
    "pulse_generator",
    "pulse_unitary",
    "z_rotation_logical",
    "x_rotation_logical",
    "y_rotation_logical",
    "cp_gate_logical",
    "compile_cnot",
    "compile_bell",
    "preparation_sequence",
    "pumped_state",
    "apply_sequence",
    "bell_states",
    "BELL_MAP",
    "CNOT_TABLE",
    "U_CNOT",
]
