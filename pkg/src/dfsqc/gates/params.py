import math

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat

TWO_PI = 2 * math.pi


class GateParams(BaseModel):
    """
    Laser and trap frequencies that fix the gate durations.

    Gate times are always derived (tau = 2 pi / delta), never stored.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    delta_ms: PositiveFloat = Field(default=TWO_PI * 7e3, description="MS detuning, rad/s")
    delta_cp: PositiveFloat = Field(default=TWO_PI / 470e-6, description="CP detuning, rad/s")
    omega_z: PositiveFloat = Field(default=TWO_PI * 1.2e6, description="axial trap frequency, rad/s")
    stark_shift: PositiveFloat = Field(default=TWO_PI * 5e3, description="AC-Stark shift rate of a focused beam, rad/s")
    carrier_rabi: PositiveFloat = Field(default=TWO_PI * 50e3, description="single-ion carrier Rabi frequency, rad/s")

    @property
    def tau_ms(self) -> float:
        return TWO_PI / self.delta_ms

    @property
    def tau_cp(self) -> float:
        return TWO_PI / self.delta_cp

    def stark_duration(self, angle: float) -> float:
        return abs(angle) / self.stark_shift

    def flip_duration(self, angle: float) -> float:
        return abs(angle) / self.carrier_rabi
