from dfsqc.dynamics.oscillator import (
    DrivenOscillatorModel,
    SpinOperatorKind,
    closure_trace_distance,
    convergence_error,
    effective_gate,
    gate_infidelity,
    ideal_gate,
    motional_return_population,
    off_resonant_error_scan,
    propagate,
    spin_motion_entropy,
)

__all__ = [
    "DrivenOscillatorModel",
    "SpinOperatorKind",
    "propagate",
    "effective_gate",
    "ideal_gate",
    "gate_infidelity",
    "off_resonant_error_scan",
    "motional_return_population",
    "spin_motion_entropy",
    "convergence_error",
    "closure_trace_distance",
]
