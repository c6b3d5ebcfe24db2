import itertools
import logging
import math
from collections.abc import Mapping

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from dfsqc.encoding.register import LogicalRegister
from dfsqc.toolkit.errors import LayoutError
from dfsqc.toolkit.models import StrEnum
from dfsqc.toolkit.quantum import SIGMA_X, SIGMA_Y, SIGMA_Z, Unitary, expm_hermitian, operator_on

logger = logging.getLogger(__name__)


class PulseKind(StrEnum):
    AC_STARK_Z = "ACStarkZ"
    MS_ROTATION = "MSRotation"
    CP_GATE = "CPGate"
    PHYSICAL_FLIP = "PhysicalFlip"


BICHROMATIC = (PulseKind.MS_ROTATION, PulseKind.CP_GATE)


class PulseOp(BaseModel):
    model_config = ConfigDict(frozen=True, use_enum_values=True)

    kind: PulseKind
    targets: tuple[int, ...] = Field(min_length=1, max_length=2)
    angle: float
    phase: float = 0.0
    duration: float = Field(default=0.0, ge=0.0, description="seconds")
    label: str | None = None

    @model_validator(mode="after")
    def _check_targets(self) -> "PulseOp":
        if min(self.targets) < 0:
            raise ValueError(f"negative ion index in {self.targets}")
        if self.kind in BICHROMATIC:
            if len(self.targets) != 2 or abs(self.targets[0] - self.targets[1]) != 1:
                raise ValueError(f"{self.kind} needs two adjacent ions, got {self.targets}")
        elif len(self.targets) != 1:
            raise ValueError(f"{self.kind} addresses a single ion, got {self.targets}")
        return self

    @property
    def is_bichromatic(self) -> bool:
        return self.kind in BICHROMATIC


class PulseSequence(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    layout: LogicalRegister = Field(alias="register")
    ops: list[PulseOp] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_range(self) -> "PulseSequence":
        for op in self.ops:
            if max(op.targets) >= self.n_ions:
                raise ValueError(f"op {op.kind} on {op.targets} outside a string of {self.n_ions} ions")
        return self

    @property
    def n_ions(self) -> int:
        return int(self.layout.n_physical)

    @property
    def total_duration(self) -> float:
        return math.fsum(op.duration for op in self.ops)

    @property
    def total_duration_us(self) -> float:
        return self.total_duration * 1e6

    def then(self, other: "PulseSequence") -> "PulseSequence":
        if other.layout != self.layout:
            raise LayoutError(details="cannot join sequences compiled for different registers")
        return PulseSequence(register=self.layout, ops=[*self.ops, *other.ops])

    def unitary(self) -> Unitary:
        """Ideal composed unitary, first op applied first"""
        total = np.eye(self.layout.physical_dim, dtype=np.complex128)
        for op in self.ops:
            total = pulse_unitary(op, self.n_ions).data @ total
        return Unitary(data=total)


def axis_operator(phase: float) -> np.ndarray:
    """cos(phi) sigma_x + sin(phi) sigma_y"""
    return math.cos(phase) * SIGMA_X + math.sin(phase) * SIGMA_Y


def pulse_generator(op: PulseOp, n_ions: int, weights: Mapping[int, float] | None = None, differential_shift: float = 0.0) -> np.ndarray:
    """
    Hermitian G with the pulse equal to exp(-i angle/2 G).

    ``weights`` are relative Rabi frequencies per ion (default 1 on the targets). Bichromatic pulses
    couple every pair of lit ions with the product of their weights, AC-Stark shifts scale with
    intensity (weight squared), carrier flips with the weight itself. ``differential_shift`` adds
    (sigma_z^a - sigma_z^b)/2 times its value to a bichromatic generator on targets (a, b).
    """
    weights = dict(weights) if weights is not None else dict.fromkeys(op.targets, 1.0)
    lit = sorted(ion for ion, w in weights.items() if w != 0.0)
    dim = 2**n_ions
    generator = np.zeros((dim, dim), dtype=np.complex128)

    if op.kind == PulseKind.AC_STARK_Z:
        for ion in lit:
            generator += weights[ion] ** 2 * operator_on(n_ions, {ion: SIGMA_Z})
        return generator
    if op.kind == PulseKind.PHYSICAL_FLIP:
        sigma = axis_operator(op.phase)
        for ion in lit:
            generator += weights[ion] * operator_on(n_ions, {ion: sigma})
        return generator

    sigma = SIGMA_Z if op.kind == PulseKind.CP_GATE else axis_operator(op.phase)
    for first, second in itertools.combinations(lit, 2):
        generator += weights[first] * weights[second] * operator_on(n_ions, {first: sigma, second: sigma})
    if differential_shift:
        a, b = op.targets
        generator += differential_shift * (operator_on(n_ions, {a: SIGMA_Z}) - operator_on(n_ions, {b: SIGMA_Z})) / 2
    return generator


def pulse_unitary(op: PulseOp, n_ions: int, weights: Mapping[int, float] | None = None, differential_shift: float = 0.0, angle: float | None = None) -> Unitary:
    theta = op.angle if angle is None else angle
    generator = pulse_generator(op, n_ions, weights=weights, differential_shift=differential_shift)
    return expm_hermitian(generator, theta / 2)
