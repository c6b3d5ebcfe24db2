import logging
import math

import numpy as np

from dfsqc.dynamics.oscillator import (
    DrivenOscillatorModel,
    SpinOperatorKind,
    closure_trace_distance,
    convergence_error,
    motional_return_population,
    off_resonant_error_scan,
    spin_motion_entropy,
)
from dfsqc.engines.base import EngineOutput, ExperimentEngine
from dfsqc.gates.pulses import PulseKind, PulseOp, pulse_unitary
from dfsqc.noise.perturbations import imbalance_perturbation
from dfsqc.toolkit.models import ExperimentKind
from dfsqc.toolkit.quantum import average_gate_fidelity, basis_state
from dfsqc.toolkit.report import rounded

logger = logging.getLogger(__name__)


def imbalance_scan(op: PulseOp, epsilons: list[float], stark_coefficient: float = 1.0) -> list[tuple[float, float]]:
    """(epsilon, 1 - average gate fidelity) of an imbalanced two-ion pulse against the balanced one"""
    ideal = pulse_unitary(op, 2)
    rows = []
    for epsilon in epsilons:
        noisy = imbalance_perturbation(op, epsilon, 2, stark_coefficient=stark_coefficient)
        rows.append((float(epsilon), max(0.0, 1.0 - average_gate_fidelity(ideal, noisy))))
    return rows


def fit_power_law(rows: list[tuple[float, float]]) -> float:
    """Slope of log(infidelity) against log(x) over the rows with positive infidelity"""
    points = [(x, y) for x, y in rows if x > 0 and y > 0]
    if len(points) < 2:
        return float("nan")
    xs, ys = np.log([p[0] for p in points]), np.log([p[1] for p in points])
    return float(np.polyfit(xs, ys, 1)[0])


class MotionalScanEngine(ExperimentEngine):
    """
    Closure checks and error scans of one bichromatic gate.

    ms-scan drives S = Sx at delta_ms with the X(pi/2) angle, cp-scan drives S = Sz at delta_cp
    with the angle of one phase-gate half.
    """

    spin_op_kind: SpinOperatorKind
    angle: float
    pulse_kind: PulseKind

    def model(self) -> DrivenOscillatorModel:
        delta = self.config.gates.delta_ms if self.spin_op_kind == SpinOperatorKind.SX else self.config.gates.delta_cp
        # exp(-i angle/2 sigma sigma) equals exp(-i (angle/4) S^2) up to a global phase
        return DrivenOscillatorModel.for_angle(self.angle / 4, delta, self.spin_op_kind, n_fock=self.config.scan.n_fock)

    def execute(self) -> EngineOutput:
        scan = self.config.scan
        model = self.model()
        dt = model.tau / scan.steps
        spin_state = basis_state("00")

        timing = off_resonant_error_scan(model, scan.timing_errors, dt=dt, threads=self.threads)
        op = PulseOp(kind=self.pulse_kind, targets=(0, 1), angle=self.angle)
        imbalance = imbalance_scan(op, scan.imbalances, self.config.noise.imbalance_stark_coefficient)

        metrics = {
            "theta": rounded(model.theta),
            "coupling": rounded(model.coupling, 6),
            "tau_us": rounded(model.tau * 1e6, 6),
            "motional_return_population": rounded(motional_return_population(model, spin_state, dt=dt)),
            "spin_motion_entropy": rounded(spin_motion_entropy(model, spin_state, dt=dt)),
            "closure_trace_distance": rounded(closure_trace_distance(model, dt=dt)),
            "convergence_error": rounded(convergence_error(model, dt=dt)),
            "imbalance_exponent": rounded(fit_power_law(imbalance), 6),
        }
        tables = {
            "timing_scan.csv": [["fraction", "infidelity"], *[[rounded(f), rounded(v)] for f, v in timing]],
            "imbalance_scan.csv": [["epsilon", "infidelity"], *[[rounded(e), rounded(v, 15)] for e, v in imbalance]],
        }
        logger.debug(f"{self.kind}: closure distance {metrics['closure_trace_distance']:.2e}")
        return EngineOutput(metrics=metrics, tables=tables)


class MsScanEngine(MotionalScanEngine):
    kind = ExperimentKind.MS_SCAN
    spin_op_kind = SpinOperatorKind.SX
    angle = math.pi / 2
    pulse_kind = PulseKind.MS_ROTATION


class CpScanEngine(MotionalScanEngine):
    kind = ExperimentKind.CP_SCAN
    spin_op_kind = SpinOperatorKind.SZ
    angle = math.pi / 4
    pulse_kind = PulseKind.CP_GATE
