"""Tests for the verification suite."""

import dataclasses

import pytest

from pairnet.pairing.optimal_ate import pairing_context
from pairnet.verification import (
    CHECK_NAMES,
    CheckStatus,
    VerificationSuite,
    check_cost_table,
    check_division_polynomial,
    check_net_recurrence,
    check_parallel,
    check_step_count,
    check_twist_transport,
)


@pytest.fixture
def suite(store):
    return VerificationSuite(store, families=["bls12"], scalars=2, blocks=3, samples=50)


class TestChecks:
    """Test individual checks."""

    def test_recurrence_passes(self, bls12, rng):
        """The pairing net satisfies its relation."""
        ctx = pairing_context(bls12, bls12.g2, bls12.g1, modified=False)
        result = check_net_recurrence(ctx, "bls12", rng, samples=100, walk_to=12)
        assert result.passed, result.message
        assert result.details["checked"] > 0

    def test_tampered_context_fails(self, bls12, rng):
        """A wrong W(2,0) breaks the relation."""
        ctx = pairing_context(bls12, bls12.g2, bls12.g1, modified=False)
        tampered = dataclasses.replace(ctx, w2=ctx.w2 + 1)
        result = check_net_recurrence(tampered, "bls12", rng, samples=100, walk_to=12)
        assert result.status is CheckStatus.FAIL

    def test_division_polynomials(self, bn):
        """W(n,0) follows the division polynomials of the first point."""
        ctx = pairing_context(bn, bn.g2, bn.g1, modified=False)
        assert check_division_polynomial(ctx, "bn", up_to=20).passed

    def test_twist_transport(self, kss16):
        """The quartic twist transports net values by powers of theta."""
        assert check_twist_transport(kss16, up_to=10).passed

    def test_parallel(self, bls12, rng):
        """Scheduled steps match on a few random blocks."""
        result = check_parallel(bls12, rng, blocks=2)
        assert result.passed, result.message
        assert result.details["critical_paths"]["double-4"] == "117M"

    def test_step_count(self, bn):
        """Published BN seed gives 116 doublings and 6 additions."""
        assert check_step_count(bn).passed

    def test_cost_table(self, bls12):
        """Shipped prices reproduce every expected total and the walk model."""
        result = check_cost_table(instance=bls12)
        assert result.passed, result.message
        assert result.family == "all"


class TestVerificationSuite:
    """Test suite orchestration and reporting."""

    def test_subset(self, suite):
        """Selected checks run once per family."""
        results = suite.run(["twist-transport", "net-miller", "step-count"])
        assert [r.name for r in results] == ["twist-transport", "net-miller", "step-count"]
        assert all(r.passed for r in results), [r.message for r in results]
        assert suite.get_overall_status() is CheckStatus.PASS

    def test_global_check_runs_once(self, suite):
        """The cost-table check does not repeat per family."""
        results = suite.run(["cost-table"])
        assert len(results) == 1
        assert results[0].family == "all"

    def test_unknown_check(self, suite):
        """Unknown check names are rejected before anything runs."""
        with pytest.raises(ValueError):
            suite.run(["twist-transport", "bogus"])
        assert suite.results == []

    def test_exceptions_become_failures(self, suite, mocker):
        """A check that raises is recorded as FAIL."""
        mocker.patch("pairnet.verification.suite.check_step_count", side_effect=RuntimeError("boom"))
        results = suite.run(["step-count"])
        assert results[0].status is CheckStatus.FAIL
        assert "boom" in results[0].message
        assert suite.get_overall_status() is CheckStatus.FAIL

    def test_report(self, suite):
        """The report lists every check with its status."""
        suite.run(["step-count"])
        report = suite.get_report()
        assert report["overall_status"] == "pass"
        assert report["families"] == ["bls12"]
        assert report["checks"][0]["name"] == "step-count"
        assert report["checks"][0]["status"] == "pass"

    def test_no_results_is_skip(self, suite):
        """Before any run the overall status is SKIP."""
        assert suite.get_overall_status() is CheckStatus.SKIP

    def test_all_names_dispatch(self, suite):
        """Every per-instance check name has an implementation."""
        for name in CHECK_NAMES:
            if name != "cost-table":
                assert callable(suite._instance_check(name))
