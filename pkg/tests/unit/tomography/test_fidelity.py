import numpy as np
import pytest
from scipy import linalg as la

from dfsqc.gates.compiler import U_CNOT
from dfsqc.tomography.fidelity import haar_states, haar_unitary, mean_gate_fidelity
from dfsqc.tomography.process import chi_from_unitary, depolarizing_channel, process_fidelity, process_tomography, unitary_channel
from dfsqc.toolkit.errors import InvalidParameterError
from dfsqc.toolkit.quantum import SIGMA_X


@pytest.mark.unit
class TestHaarSampling:
    def test_haar_states_should_be_normalized(self):
        states = haar_states(4, 100, np.random.default_rng(0))
        np.testing.assert_allclose(np.linalg.norm(states, axis=1), 1.0, atol=1e-12)

    def test_haar_unitary_should_be_unitary(self):
        u = haar_unitary(4, np.random.default_rng(1))
        np.testing.assert_allclose(u.conj().T @ u, np.eye(4), atol=1e-12)


@pytest.mark.unit
class TestMeanGateFidelity:
    def test_ideal_channel_should_have_unit_fidelity(self):
        # Act
        estimate = mean_gate_fidelity(chi_from_unitary(U_CNOT), U_CNOT, n_samples=2000)
        # Assert
        assert estimate.mean == pytest.approx(1.0, abs=1e-10)
        assert estimate.mean_permanence == pytest.approx(1.0, abs=1e-10)
        assert estimate.overall == pytest.approx(1.0, abs=1e-10)

    def test_depolarizing_channel_should_match_closed_form(self):
        # Arrange
        p = 0.2
        # Act
        estimate = mean_gate_fidelity(depolarizing_channel(p, 4), np.eye(4), n_samples=2000, seed=3)
        # Assert
        assert abs(estimate.mean - (1 - p + p / 4)) <= max(3 * estimate.stderr, 1e-10)

    def test_haar_mean_should_agree_with_process_fidelity(self):
        # Arrange
        error = la.expm(-0.1j * np.kron(SIGMA_X, np.eye(2)))
        chi = process_tomography(unitary_channel(U_CNOT @ error))
        expected = (4 * process_fidelity(chi_from_unitary(U_CNOT), chi) + 1) / 5
        # Act
        estimate = mean_gate_fidelity(chi, U_CNOT, n_samples=20_000, seed=4, batch=3000)
        # Assert
        assert abs(estimate.mean - expected) < 5 * estimate.stderr + 1e-6

    def test_stderr_should_shrink_with_square_root_of_samples(self):
        # Arrange
        error = la.expm(-0.2j * np.kron(SIGMA_X, np.eye(2)))
        chi = process_tomography(unitary_channel(U_CNOT @ error))
        # Act
        coarse = mean_gate_fidelity(chi, U_CNOT, n_samples=1000, seed=7)
        fine = mean_gate_fidelity(chi, U_CNOT, n_samples=16_000, seed=8)
        # Assert
        assert coarse.stderr / fine.stderr == pytest.approx(4.0, rel=0.2)

    def test_lossy_channel_should_separate_in_dfs_and_overall_fidelity(self):
        # Act
        estimate = mean_gate_fidelity(lambda rho: 0.5 * rho, np.eye(4), n_samples=1000)
        # Assert
        assert estimate.mean == pytest.approx(1.0, abs=1e-10)
        assert estimate.mean_permanence == pytest.approx(0.5, abs=1e-10)
        assert estimate.overall == pytest.approx(0.5, abs=1e-10)

    def test_same_seed_should_give_identical_estimate(self):
        chi = process_tomography(depolarizing_channel(0.1, 4))
        assert mean_gate_fidelity(chi, np.eye(4), n_samples=1000, seed=6) == mean_gate_fidelity(chi, np.eye(4), n_samples=1000, seed=6)

    def test_too_few_samples_should_raise(self):
        with pytest.raises(InvalidParameterError):
            mean_gate_fidelity(chi_from_unitary(np.eye(4)), np.eye(4), n_samples=10)
