"""
Spin-dependent force on one motional mode: H(t) = g (a e^{i delta t} + a^dagger e^{-i delta t}) S.

Spin space is the most significant factor of spin (x) Fock. At tau = 2 pi / |delta| the mode
returns to its initial state and the spins pick up exp(-i theta S^2) with
theta = 2 pi g^2 / (delta |delta|).
"""

import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import linalg as la

from dfsqc.toolkit.errors import ClosureError, InvalidParameterError, NumericalContractError, TruncationError
from dfsqc.toolkit.models import StrEnum
from dfsqc.toolkit.parallel import parallel_map
from dfsqc.toolkit.quantum import SIGMA_X, SIGMA_Z, Unitary, expm_hermitian, operator_on, unitary_trace_distance

logger = logging.getLogger(__name__)

TRUNCATION_TOLERANCE = 1e-8
UNITARITY_TOLERANCE = 1e-8
CLOSURE_TOLERANCE = 1e-6
CHECKPOINTS = 16
DEFAULT_STEPS = 16384


class SpinOperatorKind(StrEnum):
    SZ = "Sz"
    SX = "Sx"


class DrivenOscillatorModel(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", use_enum_values=True)

    n_fock: int = Field(default=24, ge=8)
    coupling: float = Field(description="g, rad/s")
    delta: float = Field(description="detuning, rad/s")
    spin_op_kind: SpinOperatorKind = SpinOperatorKind.SZ
    initial_fock: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_model(self) -> "DrivenOscillatorModel":
        if self.delta == 0:
            raise ValueError("detuning must be non-zero")
        if self.initial_fock >= self.n_fock - 2:
            raise ValueError(f"initial Fock level {self.initial_fock} too close to the truncation {self.n_fock}")
        return self

    @classmethod
    def for_angle(cls, theta: float, delta: float, spin_op_kind: SpinOperatorKind = SpinOperatorKind.SZ, n_fock: int = 24) -> "DrivenOscillatorModel":
        """Coupling that closes at tau with exp(-i theta S^2); theta must share the sign of delta"""
        if theta * delta < 0:
            raise InvalidParameterError(details="theta and delta must have the same sign")
        coupling = math.sqrt(theta * delta * abs(delta) / (2 * math.pi))
        return cls(n_fock=n_fock, coupling=coupling, delta=delta, spin_op_kind=spin_op_kind)

    @property
    def tau(self) -> float:
        return 2 * math.pi / abs(self.delta)

    @property
    def theta(self) -> float:
        return 2 * math.pi * self.coupling**2 / (self.delta * abs(self.delta))

    @property
    def dim(self) -> int:
        return 4 * self.n_fock

    def spin_operator(self) -> np.ndarray:
        sigma = SIGMA_Z if self.spin_op_kind == SpinOperatorKind.SZ else SIGMA_X
        return operator_on(2, {0: sigma}) + operator_on(2, {1: sigma})


def position_operator(n_fock: int) -> np.ndarray:
    """a + a^dagger in the truncated Fock basis"""
    lowering = np.diag(np.sqrt(np.arange(1, n_fock)), k=1)
    return (lowering + lowering.T).astype(np.complex128)


def _default_dt(t: float) -> float:
    return t / DEFAULT_STEPS


def _block_propagator(model: DrivenOscillatorModel, s: float, t: float, steps: int) -> np.ndarray:
    """
    Midpoint product for spin eigenvalue ``s``: V(t_K)^dagger E [V(dt) E]^(K-1) V(t_1),
    with V(t) = exp(i delta t n) and E = exp(-i dt g s (a + a^dagger)).
    """
    n = model.n_fock
    dt = t / steps
    levels = np.arange(n)
    x_vals, x_vecs = la.eigh(position_operator(n))
    kick = (x_vecs * np.exp(-1j * dt * model.coupling * s * x_vals)) @ x_vecs.conj().T

    def rotation(time: float) -> np.ndarray:
        return np.exp(1j * model.delta * time * levels)

    step = rotation(dt)[:, None] * kick
    first, last = 0.5 * dt, (steps - 0.5) * dt

    # evolve in chunks to watch the top Fock levels along the way
    bounds = sorted({max(1, round(steps * j / CHECKPOINTS)) for j in range(1, CHECKPOINTS + 1)})
    power = np.eye(n, dtype=np.complex128)
    done = 1
    for bound in bounds:
        power = power @ np.linalg.matrix_power(step, bound - done)
        done = bound
        partial = (kick @ power) * rotation(first)[None, :]
        column = partial[:, model.initial_fock]
        top = float(np.sum(np.abs(column[-2:]) ** 2))
        if top > TRUNCATION_TOLERANCE:
            raise TruncationError(details=f"top Fock population {top:.2e} at step {bound}/{steps} (s={s:+.0f}, n_fock={n})")
        residual = float(np.max(np.abs(partial.conj().T @ partial - np.eye(n))))
        if residual > UNITARITY_TOLERANCE:
            raise NumericalContractError(details=f"propagator unitarity residual {residual:.2e} at step {bound}/{steps}")
    return rotation(last).conj()[:, None] * (kick @ power) * rotation(first)[None, :]


def propagate(model: DrivenOscillatorModel, t: float, dt: float | None = None) -> Unitary:
    """
    Time-ordered propagator on spin (x) Fock over [0, t].

    Args:
        model: oscillator and coupling parameters
        t: evolution time, seconds
        dt: step size, at most t/200 (default t/16384); rounded down so the steps tile [0, t]

    Raises:
        TruncationError: if the top two Fock levels pick up more than 1e-8 population
        InvalidParameterError: if t is not positive or dt is coarser than t/200
    """
    if t <= 0:
        raise InvalidParameterError(details=f"evolution time must be positive, got {t}")
    dt = dt or _default_dt(t)
    if dt > t / 200:
        raise InvalidParameterError(details=f"dt={dt} exceeds t/200")
    steps = math.ceil(t / dt - 1e-9)

    spin_vals, spin_vecs = la.eigh(model.spin_operator())
    n = model.n_fock
    blocks = np.zeros((model.dim, model.dim), dtype=np.complex128)
    cache: dict[int, np.ndarray] = {}
    for index, value in enumerate(spin_vals):
        key = int(round(value))
        if key not in cache:
            cache[key] = np.eye(n, dtype=np.complex128) if model.coupling == 0 else _block_propagator(model, key, t, steps)
        blocks[index * n : (index + 1) * n, index * n : (index + 1) * n] = cache[key]
    change = np.kron(spin_vecs, np.eye(n))
    total = change @ blocks @ change.conj().T
    return Unitary(data=_polish(total))


def _polish(matrix: np.ndarray) -> np.ndarray:
    """Nearest unitary; removes rounding accumulated by long matrix powers"""
    return la.polar(matrix)[0]


def motional_kraus(model: DrivenOscillatorModel, propagator: Unitary) -> np.ndarray:
    """Spin-space Kraus operators K_n = <n|U|initial> for every Fock level n, shape (n_fock, 4, 4)"""
    n = model.n_fock
    u = propagator.data.reshape(4, n, 4, n)
    return np.transpose(u[:, :, :, model.initial_fock], (1, 0, 2))


def effective_gate(model: DrivenOscillatorModel, at_tau: bool = True, t: float | None = None, dt: float | None = None) -> Unitary:
    """
    Spin unitary left behind once the motional mode has closed.

    Raises:
        ClosureError: if the spin block deviates from unitarity by more than 1e-6 (residual spin-motion entanglement)
    """
    if at_tau:
        t = model.tau
    elif t is None:
        raise InvalidParameterError(details="an evolution time is required when at_tau is False")
    kraus = motional_kraus(model, propagate(model, t, dt))
    block = kraus[model.initial_fock]
    residual = float(np.max(np.abs(block.conj().T @ block - np.eye(4))))
    if residual > CLOSURE_TOLERANCE:
        raise ClosureError(details=f"spin block unitarity residual {residual:.2e} at t={t:.6e}s")
    return Unitary(data=_polish(block))


def ideal_gate(model: DrivenOscillatorModel) -> Unitary:
    """exp(-i theta S^2)"""
    spin = model.spin_operator()
    return expm_hermitian(spin @ spin, model.theta)


def motional_return_population(model: DrivenOscillatorModel, spin_state: np.ndarray, t: float | None = None, dt: float | None = None) -> float:
    """Population of the initial Fock level after evolving ``spin_state`` (x) |initial>"""
    kraus = motional_kraus(model, propagate(model, t or model.tau, dt))
    amplitude = kraus[model.initial_fock] @ spin_state
    return float(np.vdot(amplitude, amplitude).real)


def spin_motion_entropy(model: DrivenOscillatorModel, spin_state: np.ndarray, t: float | None = None, dt: float | None = None) -> float:
    """Entanglement entropy between spins and mode for the pure input spin_state (x) |initial>"""
    kraus = motional_kraus(model, propagate(model, t or model.tau, dt))
    branches = kraus @ spin_state
    spin_rho = np.einsum("na,nb->ab", branches, branches.conj())
    eigvals = la.eigvalsh((spin_rho + spin_rho.conj().T) / 2)
    eigvals = eigvals[eigvals > 1e-15]
    return float(-np.sum(eigvals * np.log(eigvals)))


def convergence_error(model: DrivenOscillatorModel, t: float | None = None, dt: float | None = None) -> float:
    """
    Largest entry change of the motional Kraus operators when the step is halved.

    Only columns starting from the initial Fock level are compared; the top levels of the
    truncated space are never reached by a valid run and converge differently.
    """
    t = t or model.tau
    dt = dt or _default_dt(t)
    coarse = motional_kraus(model, propagate(model, t, dt))
    fine = motional_kraus(model, propagate(model, t, dt / 2))
    return float(np.max(np.abs(coarse - fine)))


def gate_infidelity(model: DrivenOscillatorModel, ideal: Unitary, t: float, dt: float | None = None) -> float:
    """
    1 - average gate fidelity of the spin channel (Kraus operators over Fock levels) against ``ideal``.

    F_pro = sum_n |Tr(U^dagger K_n)|^2 / d^2, F_avg = (d F_pro + 1) / (d + 1).
    """
    kraus = motional_kraus(model, propagate(model, t, dt))
    d = 4
    overlaps = np.einsum("ab,nab->n", ideal.data.conj(), kraus)
    process = float(np.sum(np.abs(overlaps) ** 2)) / d**2
    average = (d * process + 1) / (d + 1)
    return max(0.0, 1.0 - average)


def off_resonant_error_scan(model: DrivenOscillatorModel, timing_error: list[float], dt: float | None = None, threads: int = 1) -> list[tuple[float, float]]:
    """
    Infidelity of the gate stopped at (1 + fraction) tau against exp(-i theta S^2).

    Returns:
        (fraction, infidelity) pairs in input order
    """
    for fraction in timing_error:
        if not -0.5 < fraction < 0.5:
            raise InvalidParameterError(details=f"timing error fraction {fraction} outside (-0.5, 0.5)")
    ideal = ideal_gate(model)

    def evaluate(fraction: float) -> tuple[float, float]:
        infidelity = gate_infidelity(model, ideal, (1 + fraction) * model.tau, dt)
        logger.debug(f"Timing error {fraction:+.4f}: infidelity {infidelity:.3e}")
        return float(fraction), infidelity

    return parallel_map(evaluate, timing_error, threads=threads)


def closure_trace_distance(model: DrivenOscillatorModel, dt: float | None = None) -> float:
    return unitary_trace_distance(effective_gate(model, dt=dt), ideal_gate(model))
