import numpy as np
import pytest

from dfsqc.encoding.register import LogicalRegister
from dfsqc.gates.compiler import U_CNOT
from dfsqc.tomography.fidelity import haar_unitary
from dfsqc.tomography.process import (
    chi_from_outputs,
    chi_from_unitary,
    depolarizing_channel,
    logical_input_states,
    process_fidelity,
    process_tomography,
    unitary_channel,
)
from dfsqc.tomography.report import dfs_report
from dfsqc.toolkit.errors import ConditioningError, DimensionError, EmptySubspaceError
from dfsqc.toolkit.quantum import basis_state


@pytest.mark.unit
class TestChiMatrix:
    def test_chi_of_identity_should_have_single_unit_entry(self):
        # Act
        chi = chi_from_unitary(np.eye(4))
        # Assert
        assert chi.labels[0] == "II"
        assert chi.data[0, 0] == pytest.approx(1.0)
        assert chi.trace == pytest.approx(1.0)

    def test_logical_inputs_should_cover_sixteen_product_states(self):
        inputs = logical_input_states(2)
        assert len(inputs) == 16
        assert inputs[0][0] == "0,0"
        assert inputs[-1][0] == "+i,+i"


@pytest.mark.unit
class TestProcessTomography:
    def test_exact_tomography_of_cnot_should_match_ideal_chi(self):
        # Act
        chi = process_tomography(unitary_channel(U_CNOT))
        # Assert
        assert process_fidelity(chi_from_unitary(U_CNOT), chi) == pytest.approx(1.0, abs=1e-10)
        assert chi.trace_preservation_residual() < 1e-10

    def test_chi_should_reproduce_channel_action(self, random_mixed_state):
        # Arrange
        channel = depolarizing_channel(0.3, 4)
        # Act
        chi = process_tomography(channel)
        # Assert
        np.testing.assert_allclose(chi.apply(random_mixed_state), channel(random_mixed_state), atol=1e-10)

    @pytest.mark.parametrize("p", [0.0, 0.1, 0.5])
    def test_depolarizing_process_fidelity_should_follow_closed_form(self, p):
        # Act
        chi = process_tomography(depolarizing_channel(p, 4))
        # Assert
        assert process_fidelity(chi_from_unitary(np.eye(4)), chi) == pytest.approx(1 - p + p / 16, abs=1e-10)

    def test_chi_of_convex_mixture_should_mix_chi_matrices(self):
        # Arrange
        p = 0.35
        first, second = unitary_channel(U_CNOT), depolarizing_channel(0.4, 4)
        # Act
        mixed = process_tomography(lambda rho: p * first(rho) + (1 - p) * second(rho))
        # Assert
        expected = p * process_tomography(first).data + (1 - p) * process_tomography(second).data
        np.testing.assert_allclose(mixed.data, expected, atol=1e-10)

    def test_process_fidelity_should_be_invariant_under_unitary_frame_change(self):
        # Arrange
        frame = haar_unitary(4, np.random.default_rng(21))
        noisy = depolarizing_channel(0.2, 4)

        def channel(rho):
            return noisy(U_CNOT @ rho @ U_CNOT.conj().T)

        def rotated(rho):
            return frame.conj().T @ channel(frame @ rho @ frame.conj().T) @ frame

        # Act
        original = process_fidelity(chi_from_unitary(U_CNOT), process_tomography(channel))
        transformed = process_fidelity(chi_from_unitary(frame.conj().T @ U_CNOT @ frame), process_tomography(rotated))
        # Assert
        assert transformed == pytest.approx(original, abs=1e-10)

    def test_shot_tomography_of_cnot_should_be_close(self):
        # Act
        chi = process_tomography(unitary_channel(U_CNOT), shots=2000, seed=1)
        # Assert
        assert process_fidelity(chi_from_unitary(U_CNOT), chi) > 0.9
        assert np.linalg.eigvalsh(chi.data).min() > -1e-9

    def test_shot_tomography_should_not_depend_on_thread_count(self):
        # Act
        serial = process_tomography(unitary_channel(U_CNOT), shots=50, seed=2)
        threaded = process_tomography(unitary_channel(U_CNOT), shots=50, seed=2, threads=4)
        # Assert
        np.testing.assert_allclose(serial.data, threaded.data, atol=1e-12)

    def test_physical_channel_losing_weight_should_give_trace_decreasing_chi(self):
        # Arrange
        register = LogicalRegister.linear(2)
        iso = register.isometry()
        leak = np.outer(basis_state("1111"), basis_state("1111"))

        def lossy(rho_logical):
            return 0.8 * iso @ rho_logical @ iso.conj().T + 0.2 * leak

        # Act
        chi = process_tomography(lossy, register=register)
        # Assert
        assert chi.trace == pytest.approx(0.8)
        assert chi.input_permanence == pytest.approx([0.8] * 16)
        assert process_fidelity(chi_from_unitary(np.eye(4)), chi) == pytest.approx(1.0)

    def test_physical_channel_with_wrong_output_shape_should_raise(self):
        with pytest.raises(DimensionError):
            process_tomography(lambda rho: rho, register=LogicalRegister.linear(2))

    def test_degenerate_inputs_should_raise_conditioning_error(self):
        # Arrange
        rho = np.diag([1, 0, 0, 0]).astype(np.complex128)
        # Act & Assert
        with pytest.raises(ConditioningError):
            chi_from_outputs([rho] * 16, [rho] * 16, 2)


@pytest.mark.unit
class TestDfsReport:
    def test_dfs_report_should_multiply_permanence_and_in_dfs_fidelity(self, register):
        # Arrange
        iso = register.isometry()
        target = np.array([1, 0, 0, 1]) / np.sqrt(2)
        inside = iso @ target
        rho = 0.9 * np.outer(inside, inside.conj()) + 0.1 * np.outer(basis_state("1111"), basis_state("1111"))
        # Act
        report = dfs_report(rho, target, register)
        # Assert
        assert report.permanence == pytest.approx(0.9)
        assert report.in_dfs_fidelity == pytest.approx(1.0)
        assert report.overall == pytest.approx(0.9)

    def test_dfs_report_outside_subspace_should_raise(self, register):
        with pytest.raises(EmptySubspaceError):
            dfs_report(np.outer(basis_state("0000"), basis_state("0000")), np.array([1, 0, 0, 0]), register)
