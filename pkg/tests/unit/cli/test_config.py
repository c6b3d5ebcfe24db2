import json

import pytest

from dfsqc.cli.config import ExperimentConfig, config_schema, load_config, parse_config
from dfsqc.cli.settings import DfsqcSettings
from dfsqc.toolkit.errors import ConfigError
from dfsqc.toolkit.hashing import config_hash


@pytest.mark.unit
class TestExperimentConfig:
    def test_minimal_config_should_fill_defaults(self):
        # Act
        config = parse_config('{"kind": "cnot-tomo"}')
        # Assert
        assert config.kind == "cnot-tomo"
        assert config.layout.pairs == [(0, 1), (2, 3)]
        assert config.shots == 100
        assert config.n_haar_samples == 200_000
        assert config.noise.addressing_ratio == 0.05

    def test_exact_statistics_should_disable_shots(self):
        config = parse_config('{"kind": "bell", "exact_statistics": true}')
        assert config.effective_shots is None

    def test_json_syntax_error_should_report_line_and_column(self):
        with pytest.raises(ConfigError) as exc_info:
            parse_config('{\n  "kind": "bell",\n}', source="broken.json")
        assert "broken.json:3:1" in str(exc_info.value)
        assert exc_info.value.code == 2

    def test_unknown_field_should_report_its_path(self):
        with pytest.raises(ConfigError) as exc_info:
            parse_config('{"kind": "bell", "noise": {"adressing_ratio": 0.1}}')
        assert "noise.adressing_ratio" in str(exc_info.value)

    def test_unknown_kind_should_raise(self):
        with pytest.raises(ConfigError):
            parse_config('{"kind": "teleport"}')

    def test_identical_roles_should_raise(self):
        with pytest.raises(ConfigError):
            parse_config('{"kind": "cnot-tomo", "control": 1, "target": 1}')

    def test_role_outside_register_should_raise(self):
        with pytest.raises(ConfigError):
            parse_config('{"kind": "bell", "target": 3}')

    def test_timing_error_outside_half_period_should_raise(self):
        with pytest.raises(ConfigError):
            parse_config('{"kind": "ms-scan", "scan": {"timing_errors": [0.7]}}')

    def test_with_seed_should_override_noise_seed(self):
        # Arrange
        config = ExperimentConfig(kind="bell")
        # Act
        reseeded = config.with_seed(17)
        # Assert
        assert reseeded.seed == 17
        assert reseeded.noise.seed == 17
        assert config_hash(reseeded) != config_hash(config)

    def test_load_config_on_missing_file_should_raise(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "missing.json")

    def test_load_config_should_read_file(self, tmp_path):
        # Arrange
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"kind": "coherence", "coherence": {"phi_std": 1.0}}))
        # Act
        config = load_config(path)
        # Assert
        assert config.coherence.phi_std == 1.0

    def test_schema_should_list_experiment_kinds(self):
        schema = json.dumps(config_schema())
        assert "cnot-tomo" in schema
        assert "ms-scan" in schema

    def test_register_key_should_survive_schema_and_hash(self):
        # Arrange
        config = parse_config('{"kind": "bell", "register": {"pairs": [[0, 1], [2, 3], [4, 5]]}}')
        # Act
        payload = config.model_dump(mode="json", by_alias=True)
        # Assert
        assert config.layout.n_logical == 3
        assert "register" in config_schema()["properties"]
        assert config_hash(config) == config_hash(payload)


@pytest.mark.unit
class TestSettings:
    def test_settings_should_read_prefixed_environment(self, monkeypatch):
        # Arrange
        monkeypatch.setenv("DFSQC_THREADS", "3")
        monkeypatch.setenv("DFSQC_MAX_DIMENSION", "64")
        # Act
        settings = DfsqcSettings()
        # Assert
        assert settings.threads == 3
        assert settings.max_dimension == 64
        assert settings.log_level == "WARNING"
