"""Tests for run configuration, profiles and curve fixtures."""

import json

import pytest

from pairnet.config import (
    FixtureStore,
    OutputFormat,
    RunCommand,
    RunConfig,
    RunConfigManager,
    RunConfigValidator,
)
from pairnet.curves.instance import InstanceError


@pytest.fixture
def validator():
    return RunConfigValidator()


def _errors(issues):
    return {i.parameter for i in issues if i.severity == "error"}


def _warnings(issues):
    return {i.parameter for i in issues if i.severity == "warning"}


class TestRunConfigValidator:
    """Test parameter ranges and combinations."""

    def test_defaults_are_valid(self, validator):
        """The default configuration validates."""
        is_valid, issues = validator.validate(validator.get_default_config())
        assert is_valid
        assert issues == []

    def test_missing_command(self, validator):
        """command is required."""
        is_valid, issues = validator.validate({"family": "bn"})
        assert not is_valid
        assert "command" in _errors(issues)

    @pytest.mark.parametrize("param,value", [
        ("processors", 6),
        ("family", "mnt6"),
        ("output_format", "xml"),
        ("scalars", 0),
        ("scalars", 101),
        ("timeout", 0.0),
        ("rng_seed", -1),
        ("seed", ""),
    ])
    def test_out_of_range(self, validator, param, value):
        """Values outside their ranges are errors."""
        config = {"command": "cost-report", param: value}
        is_valid, issues = validator.validate(config)
        assert not is_valid
        assert param in _errors(issues)

    def test_bool_is_not_an_int(self, validator):
        """Flags are not accepted where numbers are expected."""
        is_valid, issues = validator.validate({"command": "verify", "scalars": True})
        assert not is_valid
        assert "scalars" in _errors(issues)

    def test_int_timeout_accepted(self, validator):
        """Timeouts may be integers."""
        assert validator.validate({"command": "verify", "timeout": 5})[0]

    def test_seed_and_desk_scale_exclusive(self, validator):
        """An explicit seed cannot be combined with the desk-scale instance."""
        config = {"command": "pair", "family": "bn", "seed": "-2", "desk_scale": True}
        is_valid, issues = validator.validate(config)
        assert not is_valid
        assert "seed" in _errors(issues)

    def test_unparseable_seed(self, validator):
        """Seeds must parse as integers or signed power-of-two sums."""
        config = {"command": "pair", "family": "bn", "seed": "2^^3", "desk_scale": False}
        assert "seed" in _errors(validator.validate(config)[1])

    def test_pair_needs_family(self, validator):
        """pair without a family is an error."""
        assert "family" in _errors(validator.validate({"command": "pair"})[1])

    def test_force_compute_warning(self, validator):
        """force_compute on a desk-scale run only warns."""
        config = {"command": "pair", "family": "bn", "desk_scale": True, "force_compute": True}
        is_valid, issues = validator.validate(config)
        assert is_valid
        assert "force_compute" in _warnings(issues)

    def test_bilinearity_needs_values(self, validator):
        """Bilinearity checks cannot run in count-only mode."""
        config = {"command": "pair", "family": "bn", "count_only": True, "verify_bilinearity": True}
        assert "verify_bilinearity" in _errors(validator.validate(config)[1])

    def test_unknown_parameter_warning(self, validator):
        """Unknown keys only warn."""
        is_valid, issues = validator.validate({"command": "schedule", "threads": 4})
        assert is_valid
        assert "threads" in _warnings(issues)

    def test_validate_with_defaults(self, validator):
        """Partial configs merge with defaults; a seed turns desk scale off."""
        is_valid, merged, _ = validator.validate_with_defaults(
            {"command": "pair", "family": "bn", "seed": "2^114+2^101-2^14-1"})
        assert is_valid
        assert merged["desk_scale"] is False
        assert merged["processors"] == 4


class TestRunConfig:
    """Test RunConfig and profile management."""

    def test_dict_round_trip(self):
        """Configs survive to_dict/from_dict."""
        config = RunConfig(RunCommand.COST_REPORT, processors=8, output_format=OutputFormat.RECORDS)
        data = config.to_dict()
        assert data["command"] == "cost-report"
        assert data["output_format"] == "records"
        assert "seed" not in data
        assert RunConfig.from_dict(data) == config

    def test_seed_implies_large_scale(self):
        """A seed without desk_scale loads as a large-seed run."""
        config = RunConfig.from_dict({"command": "pair", "family": "bn", "seed": "-2"})
        assert config.desk_scale is False
        assert config.validate()

    def test_unknown_command(self):
        """Unknown commands are rejected."""
        with pytest.raises(ValueError):
            RunConfig.from_dict({"command": "plot"})

    def test_invalid_config(self):
        """Validation reports issues without raising."""
        config = RunConfig(RunCommand.PAIR, family="bls12", processors=6)
        assert not config.validate()
        assert "processors" in _errors(config.issues())

    def test_cli_defaults(self):
        """Only options of the config's command become defaults."""
        config = RunConfig(RunCommand.SCHEDULE, family="kss16", processors=8, scalars=5)
        assert config.cli_defaults() == {"family": "kss16", "processors": 8}

    def test_manager_save_load(self, tmp_path):
        """Profiles survive a save/load cycle."""
        manager = RunConfigManager()
        manager.add_profile("fast", RunConfig(RunCommand.VERIFY, family="bls12", only="twist-transport"))
        manager.add_profile("report", RunConfig(RunCommand.COST_REPORT, processors=8))
        path = tmp_path / "profiles.json"
        manager.save_to_file(str(path))

        loaded = RunConfigManager()
        loaded.load_from_file(str(path))
        assert loaded.get_profile("fast") == manager.get_profile("fast")
        assert loaded.default_map("report") == {"cost-report": {"processors": 8, "output_format": "table"}}
        assert loaded.get_summary()["total_profiles"] == 2

    def test_manager_rejects_invalid(self):
        """Invalid profiles are not added."""
        manager = RunConfigManager()
        with pytest.raises(ValueError):
            manager.add_profile("bad", RunConfig(RunCommand.PAIR))
        assert manager.get_profile("bad") is None
        with pytest.raises(KeyError):
            manager.default_map("bad")

    def test_load_invalid_profile(self, tmp_path):
        """Loading a document with an invalid profile raises."""
        path = tmp_path / "profiles.json"
        path.write_text(json.dumps({"bad": {"command": "schedule", "processors": 6}}))
        with pytest.raises(ValueError):
            RunConfigManager().load_from_file(str(path))


class TestFixtureStore:
    """Test the shipped fixtures and instance documents."""

    def test_shipped_names(self, store):
        """All five families ship a desk-scale fixture."""
        assert store.names() == ["bls12", "bls24", "bls48", "bn", "kss16"]

    def test_cached(self, store):
        """Instances are built once per store."""
        assert store.get("bn") is store.get("bn")

    def test_unknown_name(self, store):
        """Unknown fixture names raise KeyError."""
        with pytest.raises(KeyError):
            store.get("mnt4")

    def test_prime_mismatch(self):
        """A recorded p that disagrees with p(x) is rejected."""
        bad = FixtureStore({"bn": {"family": "bn", "x": "-2", "p": "379"}})
        with pytest.raises(InstanceError):
            bad.get("bn")

    def test_empty_document(self, tmp_path):
        """A document without instances cannot be loaded."""
        path = tmp_path / "empty.json"
        path.write_text(json.dumps({"instances": {}}))
        with pytest.raises(ValueError):
            FixtureStore.load(path)

    def test_expanded_round_trip(self, bls12, tmp_path):
        """Full instance documents reload to the same instance."""
        exported = FixtureStore()
        exported.add("bls12", bls12)
        path = tmp_path / "fixtures.json"
        exported.save_to_file(path, expand=True)
        assert "tower" in json.loads(path.read_text())["instances"]["bls12"]

        reloaded = FixtureStore.load(path).get("bls12")
        assert reloaded.to_dict() == bls12.to_dict()

    def test_seed_only_save(self, store, tmp_path):
        """Unexpanded saves keep the seed entries."""
        path = tmp_path / "seeds.json"
        FixtureStore(store.entries).save_to_file(path, expand=False)
        assert json.loads(path.read_text())["instances"]["bn"]["x"] == "-2"
