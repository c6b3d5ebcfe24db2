from pydantic import BaseModel, ConfigDict, Field


class NoiseModel(BaseModel):
    """
    Error budget attached to a pulse sequence.

    Defaults carry only the measured addressing ratio; imbalance and jitter magnitudes are not
    known and stay zero unless a calibration is supplied (and labelled through ``calibration_note``).
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    addressing_ratio: float = Field(default=0.05, ge=0.0, lt=1.0, description="neighbour to target Rabi frequency ratio")
    intensity_imbalance: float = Field(default=0.0, description="fractional Rabi frequency difference across an addressed pair")
    imbalance_stark_coefficient: float = Field(default=1.0, ge=0.0, description="differential AC-Stark shift per unit imbalance, in units of the gate angle")
    ac_stark_phase_jitter_std: float = Field(default=0.0, ge=0.0, description="rad per AC-Stark pulse")
    collective_phase_std: float = Field(default=0.0, ge=0.0, description="rad per sequence")
    seed: int = 0
    calibration_note: str | None = None

    @classmethod
    def noiseless(cls, seed: int = 0) -> "NoiseModel":
        return cls(addressing_ratio=0.0, seed=seed)

    @classmethod
    def calibrated_demo(cls, seed: int = 0) -> "NoiseModel":
        return cls(
            addressing_ratio=0.05,
            intensity_imbalance=0.02,
            ac_stark_phase_jitter_std=0.42,
            collective_phase_std=0.5,
            seed=seed,
            calibration_note="demonstration calibration: jitter and imbalance tuned by hand, not fitted to lab data",
        )

    @property
    def is_stochastic(self) -> bool:
        return self.ac_stark_phase_jitter_std > 0 or self.collective_phase_std > 0

    @property
    def is_noiseless(self) -> bool:
        return not self.is_stochastic and self.addressing_ratio == 0 and self.intensity_imbalance == 0
