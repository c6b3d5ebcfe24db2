import numpy as np
import pytest

from dfsqc.tomography.fidelity import haar_states


@pytest.fixture
def random_mixed_state() -> np.ndarray:
    """Two-qubit mixture of three Haar-random pure states"""
    rng = np.random.default_rng(5)
    states = haar_states(4, 3, rng)
    weights = np.array([0.6, 0.3, 0.1])
    return np.einsum("k,ka,kb->ab", weights, states, states.conj())


@pytest.fixture
def bell_phi_plus() -> np.ndarray:
    return np.array([1, 0, 0, 1], dtype=np.complex128) / np.sqrt(2)
