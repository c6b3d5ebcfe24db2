import math

import numpy as np
import pytest
from scipy import linalg as la

from dfsqc.encoding.register import LogicalRegister
from dfsqc.gates.logical import cp_gate_logical, x_rotation_logical, y_rotation_logical, z_rotation_logical
from dfsqc.toolkit.errors import LayoutError
from dfsqc.toolkit.quantum import SIGMA_X, SIGMA_Y, SIGMA_Z


def _rotation(pauli: np.ndarray, theta: float) -> np.ndarray:
    return la.expm(-0.5j * theta * pauli)


@pytest.mark.unit
class TestLogicalRotations:
    @pytest.mark.parametrize("theta", [math.pi / 2, math.pi, -0.37])
    def test_z_rotation_should_restrict_to_logical_z(self, theta):
        # Arrange
        register = LogicalRegister.linear(1)
        # Act
        restricted = z_rotation_logical(theta, 0, register).restricted(register.isometry())
        # Assert
        np.testing.assert_allclose(restricted, _rotation(SIGMA_Z, theta), atol=1e-12)

    @pytest.mark.parametrize("axis_phase", [0.0, 0.4, math.pi / 2, 2.5])
    def test_x_rotation_should_restrict_to_logical_x_for_any_axis_phase(self, axis_phase):
        # Arrange
        register = LogicalRegister.linear(1)
        # Act
        restricted = x_rotation_logical(math.pi / 2, 0, axis_phase=axis_phase, register=register).restricted(register.isometry())
        # Assert
        np.testing.assert_allclose(restricted, _rotation(SIGMA_X, math.pi / 2), atol=1e-12)

    def test_y_rotation_should_restrict_to_logical_y(self):
        # Arrange
        register = LogicalRegister.linear(1)
        # Act
        restricted = y_rotation_logical(0.9, 0, register).restricted(register.isometry())
        # Assert
        np.testing.assert_allclose(restricted, _rotation(SIGMA_Y, 0.9), atol=1e-12)

    def test_rotation_on_second_logical_qubit_should_act_on_second_pair(self, register):
        # Act
        restricted = x_rotation_logical(math.pi, 1, register=register).restricted(register.isometry())
        # Assert
        np.testing.assert_allclose(restricted, np.kron(np.eye(2), _rotation(SIGMA_X, math.pi)), atol=1e-12)

    def test_rotations_should_keep_dfs_invariant(self, register):
        # Arrange
        iso = register.isometry()
        u = x_rotation_logical(0.7, 0, register=register).data @ z_rotation_logical(0.3, 1, register).data
        # Act
        leaked = (np.eye(register.physical_dim) - iso @ iso.conj().T) @ u @ iso
        # Assert
        np.testing.assert_allclose(leaked, 0, atol=1e-12)

    def test_rotation_on_missing_logical_qubit_should_raise(self, register):
        with pytest.raises(LayoutError):
            z_rotation_logical(1.0, 2, register)


@pytest.mark.unit
class TestPhaseGate:
    def test_cp_gate_should_restrict_to_opposite_sign_zz(self, register):
        # Arrange
        theta = math.pi / 4
        zz = np.kron(SIGMA_Z, SIGMA_Z)
        # Act
        restricted = cp_gate_logical(theta, (0, 1), register).restricted(register.isometry())
        # Assert
        np.testing.assert_allclose(restricted, la.expm(0.5j * theta * zz), atol=1e-12)

    def test_cp_gate_on_non_adjacent_logical_qubits_should_raise(self):
        with pytest.raises(LayoutError):
            cp_gate_logical(1.0, (0, 2), LogicalRegister.linear(3))

    @pytest.mark.parametrize("logical_qubit", [0, 1])
    def test_cp_gate_should_commute_with_z_rotations(self, logical_qubit, register):
        # Arrange
        cp = cp_gate_logical(0.7, (0, 1), register).data
        z = z_rotation_logical(1.3, logical_qubit, register).data
        # Act
        commutator = cp @ z - z @ cp
        # Assert
        np.testing.assert_allclose(commutator, 0.0, atol=1e-12)
