"""Tests for the pairnet command line."""

import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

from pairnet.cli import EXIT_CONFIG, EXIT_FAILED, EXIT_OK, cli
from pairnet.costmodel.report import parse_json_lines
from pairnet.fieldtower.element import FieldElement


@pytest.fixture
def runner():
    return CliRunner()


class TestImports:
    """Test that the package and its command line import cleanly."""

    @pytest.mark.parametrize("module", [
        "pairnet.fieldtower.element",
        "pairnet.curves.instance",
        "pairnet.ellnet.steps",
        "pairnet.pairing.final_exp",
        "pairnet.costmodel.report",
        "pairnet.parallel.executor",
        "pairnet.verification.suite",
        "pairnet.cli",
    ])
    def test_fresh_interpreter(self, module):
        """Each module imports in a new interpreter, with nothing preloaded."""
        done = subprocess.run([sys.executable, "-c", f"import {module}"], capture_output=True, text=True)
        assert done.returncode == 0, done.stderr

    def test_entry_point_help(self, runner):
        """The console script's group answers --help."""
        result = runner.invoke(cli, ["--help"])
        assert result.exit_code == EXIT_OK
        for command in ("pair", "cost-report", "verify", "schedule"):
            assert command in result.output

    def test_sampling_does_not_shadow_random(self):
        """Element sampling lives under a name that leaves the random module visible in the class body."""
        assert hasattr(FieldElement, "sample")
        assert not hasattr(FieldElement, "random")


class TestCostReport:
    """Test the cost-report command."""

    def test_table_with_check(self, runner):
        """The shipped table reproduces the expected report."""
        result = runner.invoke(cli, ["cost-report", "--check"])
        assert result.exit_code == EXIT_OK, result.output
        assert "9637M+2I" in result.output
        assert "15071M+3I" in result.output
        assert "All expected values reproduced" in result.output

    def test_records(self, runner):
        """Records output is line-delimited JSON."""
        result = runner.invoke(cli, ["cost-report", "--format", "records", "--processors", "8"])
        assert result.exit_code == EXIT_OK, result.output
        records = parse_json_lines(result.output)
        totals = {(r.family, r.seed): r.value for r in records if r.metric == "pairing"}
        assert totals[("bls48", "256-bit")] == "27720M"
        assert {r.processors for r in records} <= {0, 8}

    def test_unsupported_processors(self, runner):
        """Processor counts other than 4 and 8 are configuration errors."""
        result = runner.invoke(cli, ["cost-report", "--processors", "6"])
        assert result.exit_code == EXIT_CONFIG

    def test_mismatching_table(self, runner, cost_table, tmp_path):
        """A table with a different M_12 price fails the check."""
        document = dict(cost_table.document)
        document["prices"] = dict(document["prices"], M_12="55M")
        path = tmp_path / "table.json"
        path.write_text(json.dumps(document))
        result = runner.invoke(cli, ["cost-report", "--cost-table", str(path), "--check"])
        assert result.exit_code == EXIT_FAILED
        assert "expected 117M" in result.output
        assert "published doubling-step critical paths" in result.output


class TestPair:
    """Test the pair command."""

    def test_unknown_family(self, runner):
        """Unknown families are usage errors."""
        result = runner.invoke(cli, ["pair", "--family", "mnt4"])
        assert result.exit_code == EXIT_CONFIG

    def test_missing_family(self, runner):
        """pair requires a family."""
        assert runner.invoke(cli, ["pair"]).exit_code == EXIT_CONFIG

    def test_published_seed_counts(self, runner):
        """A published BN seed is reported without computing the pairing."""
        result = runner.invoke(cli, ["pair", "--family", "bn", "--x", "2^114+2^101-2^14-1", "--count-only"])
        assert result.exit_code == EXIT_OK, result.output
        assert "116 doubles, 6 adds" in result.output
        assert "15071M+3I" in result.output

    def test_large_seed_skips_computation(self, runner):
        """Large seeds need --force-compute for a full pairing."""
        result = runner.invoke(cli, ["pair", "--family", "bls12", "--x", "-2^77+2^50+2^33"])
        assert result.exit_code == EXIT_OK, result.output
        assert "--force-compute" in result.output

    def test_inadmissible_seed(self, runner):
        """KSS16 seeds must be admissible."""
        result = runner.invoke(cli, ["pair", "--family", "kss16", "--x", "1"])
        assert result.exit_code == EXIT_CONFIG

    def test_seed_with_desk_scale(self, runner):
        """An explicit seed cannot be combined with --desk-scale."""
        result = runner.invoke(cli, ["pair", "--family", "bn", "--x", "-2", "--desk-scale"])
        assert result.exit_code == EXIT_CONFIG

    def test_desk_scale_pairing(self, runner):
        """Desk-scale BLS12 pairing with bilinearity checks."""
        result = runner.invoke(cli, ["pair", "--family", "bls12", "--desk-scale", "--verify-bilinearity"])
        assert result.exit_code == EXIT_OK, result.output
        assert "2 doubles, 1 adds" in result.output
        assert "20/20" in result.output

    def test_desk_scale_eight_processors(self, runner):
        """Desk-scale BN pairing on eight processors."""
        result = runner.invoke(cli, ["pair", "--family", "bn", "--processors", "8"])
        assert result.exit_code == EXIT_OK, result.output
        assert "on 8 processors" in result.output


class TestVerify:
    """Test the verify command."""

    def test_single_check(self, runner):
        """One check on one family."""
        result = runner.invoke(cli, ["verify", "--only", "twist-transport", "--family", "bls12"])
        assert result.exit_code == EXIT_OK, result.output
        assert "Overall: PASS" in result.output

    def test_unknown_check(self, runner):
        """Unknown check names are configuration errors."""
        result = runner.invoke(cli, ["verify", "--only", "bogus"])
        assert result.exit_code == EXIT_CONFIG
        assert "bogus" in result.output


class TestSchedule:
    """Test the schedule command."""

    def test_shipped(self, runner):
        """All shipped schedules meet their closed forms."""
        result = runner.invoke(cli, ["schedule", "--family", "bn"])
        assert result.exit_code == EXIT_OK, result.output
        assert "double-4" in result.output
        assert "19M_2+3S_2+M_12" in result.output

    def test_schedule_file(self, runner, tmp_path):
        """A schedule document missing an output fails."""
        document = {
            "name": "broken-add-4",
            "kind": "doubleadd",
            "processors": 4,
            "assignments": [
                {"processor": 1, "tasks": ["U1", "U3", "U5", "U2", "U4", "U6", "U8", "V1", "L2", "L3", "X2", "X4"]},
                {"processor": 2, "tasks": ["U7", "V2", "L4", "L5", "X3", "X5", "T2", "T3"]},
                {"processor": 3, "tasks": ["U9", "U10", "L6", "L7", "X6", "Y4", "T4"]},
                {"processor": 4, "tasks": ["U11", "U12", "L8", "X7"]},
            ],
        }
        path = tmp_path / "schedule.json"
        path.write_text(json.dumps(document))
        result = runner.invoke(cli, ["schedule", "--file", str(path)])
        assert result.exit_code == EXIT_FAILED
        assert "L9" in result.output


class TestProfiles:
    """Test option defaults from run profiles."""

    def test_profile_defaults(self, runner, tmp_path):
        """A cost-report profile supplies the processor count."""
        path = tmp_path / "profiles.json"
        path.write_text(json.dumps({"eight": {"command": "cost-report", "processors": 8,
                                              "output_format": "records"}}))
        result = runner.invoke(cli, ["--config", str(path), "--profile", "eight", "cost-report"])
        assert result.exit_code == EXIT_OK, result.output
        assert {r.processors for r in parse_json_lines(result.output)} <= {0, 8}

    def test_profile_without_config(self, runner):
        """--profile needs --config."""
        result = runner.invoke(cli, ["--profile", "eight", "cost-report"])
        assert result.exit_code == EXIT_CONFIG

    def test_unknown_profile(self, runner, tmp_path):
        """Unknown profile names are usage errors."""
        path = tmp_path / "profiles.json"
        path.write_text(json.dumps({"eight": {"command": "cost-report", "processors": 8}}))
        result = runner.invoke(cli, ["--config", str(path), "--profile", "nine", "cost-report"])
        assert result.exit_code == EXIT_CONFIG
