import pytest

from dfsqc.toolkit.errors import ConfigError, DfsqcException, EmptySubspaceError
from dfsqc.toolkit.hashing import config_hash
from dfsqc.toolkit.models import DfsqcError, ExperimentKind, Status
from dfsqc.toolkit.parallel import parallel_map
from dfsqc.toolkit.report import ExperimentReport, MatrixBundle, canonical_json, rounded


@pytest.mark.unit
class TestModels:
    @pytest.mark.parametrize("exclude_none", [True, False])
    def test_experiment_report_on_model_dump_should_always_exclude_none_values(self, exclude_none):
        # Arrange
        model = ExperimentReport(kind=ExperimentKind.BELL, version="1.0.0", config_hash="abc", seed=1, metrics={"a": 1.0})
        # Act
        dump_response = model.model_dump(exclude_none=exclude_none)
        # Assert
        assert dump_response == {"kind": "bell", "status": "COMPLETED", "version": "1.0.0", "config_hash": "abc", "seed": 1, "metrics": {"a": 1.0}}

    def test_experiment_report_from_error_should_be_failed_and_raise_on_status_check(self):
        # Arrange
        error = DfsqcError.from_exception(EmptySubspaceError(permanence=0.0))
        report = ExperimentReport.from_error(error, kind=ExperimentKind.CNOT_TOMOGRAPHY, version="1.0.0", config_hash="abc", seed=0)
        # Act & Assert
        assert report.status == Status.FAILED
        with pytest.raises(DfsqcException) as exc_info:
            report.raise_for_status()
        assert exc_info.value.code == 3

    def test_experiment_report_without_error_should_not_raise_on_status_check(self):
        report = ExperimentReport(kind=ExperimentKind.COHERENCE, version="1.0.0", config_hash="abc", seed=0)
        assert report.raise_for_status() is None

    def test_config_error_should_carry_exit_code_two(self):
        error = ConfigError(details="bad field")
        assert error.code == 2
        assert str(error) == "Invalid configuration: bad field"

    def test_matrix_bundle_to_json_should_be_canonical(self):
        # Arrange
        bundle = MatrixBundle()
        bundle.add("rho", [[1, 0], [0, 0]], labels=["0", "1"])
        # Act
        text = bundle.to_json()
        # Assert
        assert text.endswith("\n")
        assert '"rho": [\n' in text
        assert text == canonical_json(bundle.model_dump(mode="json"))

    def test_config_hash_should_not_depend_on_key_order(self):
        assert config_hash({"a": 1, "b": 2}) == config_hash({"b": 2, "a": 1})

    def test_rounded_should_drop_trailing_noise(self):
        assert rounded(0.1 + 0.2) == 0.3

    @pytest.mark.parametrize("threads", [1, 4])
    def test_parallel_map_should_preserve_input_order(self, threads):
        assert parallel_map(lambda x: x * x, range(10), threads=threads) == [x * x for x in range(10)]
