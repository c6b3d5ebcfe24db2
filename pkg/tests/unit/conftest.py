import numpy as np
import pytest

from dfsqc.encoding import encode_state
from dfsqc.encoding.register import LogicalRegister


@pytest.fixture
def register() -> LogicalRegister:
    return LogicalRegister.linear(2)


@pytest.fixture
def logical_plus_state() -> np.ndarray:
    """(|0>_L + |1>_L) / sqrt(2) on a single pair"""
    return encode_state(np.array([1, 1]) / np.sqrt(2), LogicalRegister.linear(1)).data
