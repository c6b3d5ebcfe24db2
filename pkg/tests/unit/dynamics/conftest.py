import math

import pytest

from dfsqc.dynamics.oscillator import DrivenOscillatorModel, SpinOperatorKind

DELTA = 2 * math.pi * 7e3


@pytest.fixture
def ms_model() -> DrivenOscillatorModel:
    """exp(-i pi/8 S_x^2), the two-ion X(pi/2) rotation"""
    return DrivenOscillatorModel.for_angle(math.pi / 8, DELTA, SpinOperatorKind.SX)


@pytest.fixture
def cp_model() -> DrivenOscillatorModel:
    return DrivenOscillatorModel.for_angle(math.pi / 16, 2 * math.pi / 470e-6, SpinOperatorKind.SZ)
