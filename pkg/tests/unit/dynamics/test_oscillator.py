import math

import numpy as np
import pytest
from pydantic import ValidationError

from dfsqc.dynamics.oscillator import (
    DrivenOscillatorModel,
    SpinOperatorKind,
    closure_trace_distance,
    convergence_error,
    effective_gate,
    ideal_gate,
    motional_return_population,
    off_resonant_error_scan,
    position_operator,
    propagate,
    spin_motion_entropy,
)
from dfsqc.toolkit.errors import ClosureError, InvalidParameterError, TruncationError
from dfsqc.toolkit.quantum import SIGMA_X, SIGMA_Z, basis_state, equal_up_to_phase, expm_hermitian, unitary_overlap

CAT = (basis_state("00") + basis_state("11")) / math.sqrt(2)


@pytest.mark.unit
class TestDrivenOscillatorModel:
    def test_for_angle_should_round_trip_theta(self, ms_model):
        assert ms_model.theta == pytest.approx(math.pi / 8)
        assert ms_model.tau == pytest.approx(1 / 7e3)

    def test_for_angle_with_negative_detuning_should_give_negative_theta(self):
        model = DrivenOscillatorModel.for_angle(-math.pi / 8, -1e4)
        assert model.theta == pytest.approx(-math.pi / 8)

    def test_for_angle_with_opposite_signs_should_raise(self):
        with pytest.raises(InvalidParameterError):
            DrivenOscillatorModel.for_angle(math.pi / 8, -1e4)

    def test_doubling_detuning_should_quarter_theta(self, ms_model):
        doubled = ms_model.model_copy(update={"delta": 2 * ms_model.delta})
        assert doubled.theta == pytest.approx(ms_model.theta / 4)

    def test_model_with_zero_detuning_should_raise(self):
        with pytest.raises(ValidationError):
            DrivenOscillatorModel(coupling=1.0, delta=0.0)

    def test_model_with_small_fock_space_should_raise(self):
        with pytest.raises(ValidationError):
            DrivenOscillatorModel(coupling=1.0, delta=1.0, n_fock=4)

    def test_position_operator_should_be_symmetric_with_sqrt_n_entries(self):
        x = position_operator(4)
        np.testing.assert_allclose(x, x.T)
        np.testing.assert_allclose(np.diag(x, k=1), np.sqrt([1, 2, 3]))


@pytest.mark.unit
class TestPropagation:
    def test_propagate_should_be_unitary(self, ms_model):
        u = propagate(ms_model, ms_model.tau / 3).data
        np.testing.assert_allclose(u.conj().T @ u, np.eye(ms_model.dim), atol=1e-10)

    def test_propagate_with_coarse_step_should_raise(self, ms_model):
        with pytest.raises(InvalidParameterError):
            propagate(ms_model, ms_model.tau, dt=ms_model.tau / 100)

    def test_effective_ms_gate_should_match_two_ion_rotation(self, ms_model):
        # Act
        gate = effective_gate(ms_model)
        # Assert
        expected = expm_hermitian(np.kron(SIGMA_X, SIGMA_X), math.pi / 4)
        assert unitary_overlap(gate, expected) == pytest.approx(1.0, abs=1e-6)

    def test_effective_cp_gate_should_be_diagonal(self, cp_model):
        # Act
        gate = effective_gate(cp_model).data
        # Assert
        np.testing.assert_allclose(gate, np.diag(np.diag(gate)), atol=1e-6)
        assert equal_up_to_phase(gate, ideal_gate(cp_model).data, atol=1e-5)

    @pytest.mark.parametrize("model_name, pauli", [("ms_model", SIGMA_X), ("cp_model", SIGMA_Z)])
    def test_effective_gate_should_commute_with_its_two_ion_parity(self, model_name, pauli, request):
        # Arrange
        gate = effective_gate(request.getfixturevalue(model_name)).data
        parity = np.kron(pauli, pauli)
        # Act
        commutator = gate @ parity - parity @ gate
        # Assert
        np.testing.assert_allclose(commutator, 0, atol=1e-5)

    def test_closure_trace_distance_should_be_small(self, ms_model):
        assert closure_trace_distance(ms_model) < 1e-4

    def test_convergence_error_should_be_small(self, cp_model):
        assert convergence_error(cp_model) < 1e-5

    def test_mode_should_return_at_gate_time(self, cp_model):
        assert motional_return_population(cp_model, CAT) == pytest.approx(1.0, abs=1e-6)

    def test_spin_and_motion_should_be_entangled_halfway(self, cp_model):
        # Act
        halfway = spin_motion_entropy(cp_model, CAT, t=cp_model.tau / 2)
        closed = spin_motion_entropy(cp_model, CAT)
        # Assert
        assert halfway > 0.1
        assert closed < 1e-5

    def test_effective_gate_halfway_should_raise_closure_error(self, cp_model):
        with pytest.raises(ClosureError):
            effective_gate(cp_model, at_tau=False, t=cp_model.tau / 2)

    def test_strong_drive_in_small_fock_space_should_raise_truncation_error(self):
        # Arrange
        model = DrivenOscillatorModel.for_angle(4 * math.pi, 1e4, SpinOperatorKind.SZ, n_fock=8)
        # Act & Assert
        with pytest.raises(TruncationError) as exc_info:
            propagate(model, model.tau)
        assert exc_info.value.code == 3


@pytest.mark.unit
class TestTimingScan:
    def test_scan_should_be_zero_on_resonance_and_grow_with_timing_error(self, cp_model):
        # Act
        rows = off_resonant_error_scan(cp_model, [0.0, 0.02, 0.1], threads=2)
        # Assert
        fractions, infidelities = zip(*rows)
        assert fractions == (0.0, 0.02, 0.1)
        assert infidelities[0] < 1e-9
        assert infidelities[0] < infidelities[1] < infidelities[2]

    def test_scan_with_fraction_outside_half_period_should_raise(self, cp_model):
        with pytest.raises(InvalidParameterError):
            off_resonant_error_scan(cp_model, [0.6])
