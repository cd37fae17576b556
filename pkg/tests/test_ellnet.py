"""Tests for elliptic net contexts, steps, walks and recurrence oracles."""

import dataclasses
import json
import logging

import pytest

from pairnet.ellnet.block import NetBlock
from pairnet.ellnet.context import DegenerateNetError, build_context, modified_value
from pairnet.ellnet.evaluate import StepTrace, initial_block, net_eval, net_walk, step_plan
from pairnet.ellnet.rank1 import Rank1Net, multiple_point
from pairnet.ellnet.recurrence import (
    NaiveNet,
    block_values,
    check_recurrence,
    reconstruct_from_context,
    sample_index_tuples,
)
from pairnet.ellnet.steps import StepKind, double_step, doubleadd_step, per_step_model, required_ops, run_step
from pairnet.fieldtower.counter import counting
from pairnet.pairing.optimal_ate import pairing_context


@pytest.fixture(scope="module")
def plain_ctx(bls12):
    return pairing_context(bls12, bls12.g2, bls12.g1, modified=False)


@pytest.fixture(scope="module")
def modified_ctx(bls12):
    return pairing_context(bls12, bls12.g2, bls12.g1, modified=True)


@pytest.fixture(scope="module")
def naive(plain_ctx):
    return NaiveNet(plain_ctx, 60)


class TestContext:
    """Test net constants."""

    def test_row_degrees(self, plain_ctx, bls12):
        """Row 0 lives in the twist field, row 1 in F_p^k."""
        assert plain_ctx.row0_degree == bls12.e
        assert plain_ctx.row1_degree == bls12.k

    def test_same_point_is_degenerate(self, bls12):
        """x1 = x2 has no net."""
        Q = bls12.twist_map(bls12.g2)
        with pytest.raises(DegenerateNetError):
            build_context(Q, Q)
        with pytest.raises(DegenerateNetError):
            build_context(Q, -Q)

    def test_infinity_is_degenerate(self, bls12):
        """Points at infinity have no net."""
        with pytest.raises(DegenerateNetError):
            build_context(bls12.g1, bls12.curve.infinity())

    def test_modified_initial_row(self, modified_ctx, plain_ctx):
        """The modified second row starts [1, c, c^2 W(2,1)]."""
        c = modified_ctx.factor
        assert c == plain_ctx.wm11
        one, w11, w21 = modified_ctx.initial_second_row
        assert one == 1
        assert w11 == c
        assert w21 == c.square() * plain_ctx.w21

    def test_half_degree_inverse(self, modified_ctx):
        """c^-1 descends to the half-degree field on pairing nets."""
        assert modified_ctx.half_degree
        assert modified_ctx.t1_scale.degree == modified_ctx.row1_degree // 2


class TestWalk:
    """Test the double-and-add walk."""

    def test_step_plan(self):
        """Bits after the leading one pick the step kind."""
        assert step_plan(13) == [StepKind.DOUBLE_ADD, StepKind.DOUBLE, StepKind.DOUBLE_ADD]
        assert step_plan(1) == []
        with pytest.raises(ValueError):
            step_plan(0)

    def test_initial_block(self, plain_ctx, naive):
        """The initial block holds W(-2..5, 0) and W(0..2, 1)."""
        block = initial_block(plain_ctx)
        for n in range(-2, 6):
            assert block.w0(n) == naive(n, 0)
        for n in range(0, 3):
            assert block.w1(n) == naive(n, 1)

    @pytest.mark.parametrize("m", [2, 3, 5, 8, 13, 21, 33, 50])
    def test_walk_matches_recursion(self, plain_ctx, naive, m):
        """Every value of the walked block equals the naive recursion."""
        block = net_walk(plain_ctx, m)
        assert block.center == m
        for (a, b), value in block.indexed_values().items():
            assert value == naive(a, b)

    @pytest.mark.parametrize("m", [7, 20, 37])
    def test_modified_walk(self, modified_ctx, naive, m):
        """The modified walk yields c^(ab) W(a,b)."""
        w0, w1 = net_eval(modified_ctx, m)
        assert w0 == naive(m, 0)
        assert w1 == modified_value(modified_ctx, m, 1, naive(m, 1))

    def test_step_shortcuts(self, plain_ctx):
        """double_step and doubleadd_step match run_step."""
        block = initial_block(plain_ctx)
        assert double_step(plain_ctx, block) == run_step(plain_ctx, block, StepKind.DOUBLE)
        assert doubleadd_step(plain_ctx, block).center == 3

    def test_block_shape(self, plain_ctx):
        """Blocks need 8 + 3 values."""
        block = initial_block(plain_ctx)
        with pytest.raises(ValueError):
            NetBlock(1, block.first[:7], block.second)

    def test_trace(self, plain_ctx, caplog):
        """Traces record one JSON line per step."""
        trace = StepTrace(label="walk")
        with caplog.at_level(logging.DEBUG, logger="pairnet.ellnet.trace"):
            net_walk(plain_ctx, 13, trace=trace)
        assert [r["type"] for r in trace.records] == ["doubleadd", "double", "doubleadd"]
        assert [r["center"] for r in trace.records] == ["3", "6", "13"]
        lines = trace.to_lines().splitlines()
        assert json.loads(lines[-1])["digest"] == trace.records[-1]["digest"]
        assert any("doubleadd" in message for message in caplog.messages)

    def test_trace_divergence(self, plain_ctx):
        """Traces of different walks diverge at their first differing step."""
        first, second = StepTrace(), StepTrace()
        net_walk(plain_ctx, 13, trace=first)
        net_walk(plain_ctx, 9, trace=second)
        assert first.first_divergence(second) == 1
        assert first.first_divergence(first) is None


class TestStepCounts:
    """Test per-step tallies."""

    @pytest.mark.parametrize("kind", list(StepKind))
    def test_model_matches_measurement(self, modified_ctx, kind):
        """A counted step records exactly the per-step model."""
        block = net_walk(modified_ctx, 5)
        with counting() as counter:
            run_step(modified_ctx, block, kind)
        assert counter.to_dict() == per_step_model(kind, modified_ctx).to_dict()

    def test_required_ops(self):
        """Doubling skips L9 and T4; doubleadd skips L1 and T1."""
        double = {op.name for op in required_ops(StepKind.DOUBLE)}
        add = {op.name for op in required_ops(StepKind.DOUBLE_ADD)}
        assert "L9" not in double and "T4" not in double
        assert "L1" not in add and "T1" not in add
        assert "Y1" in double and "Y1" not in add
        assert "Y4" in add and "Y4" not in double


class TestRecurrence:
    """Test the recurrence oracles."""

    def test_relation_holds(self, naive, rng):
        """The four-term relation holds on 500 sampled tuples."""
        report = check_recurrence(naive, sample_index_tuples(rng, 500, 60))
        assert report.holds
        assert report.checked == 500

    def test_modified_relation_holds(self, modified_ctx, rng):
        """The modified net is again a net."""
        report = check_recurrence(NaiveNet(modified_ctx, 40), sample_index_tuples(rng, 500, 40))
        assert report.holds

    def test_rank1_relation(self, naive, rng):
        """Row 0 alone satisfies the rank-1 relation."""
        assert check_recurrence(naive, sample_index_tuples(rng, 200, 60, rank=1)).holds

    def test_tampered_net_fails(self, plain_ctx, rng):
        """Changing W(2,0) breaks the relation."""
        tampered = dataclasses.replace(plain_ctx, w2=plain_ctx.w2 + 1)
        report = check_recurrence(NaiveNet(tampered, 40), sample_index_tuples(rng, 200, 40))
        assert not report.holds
        assert report.failures

    def test_block_values(self, plain_ctx, naive):
        """Block providers answer stored indices and their negatives."""
        lookup = block_values([net_walk(plain_ctx, 10)])
        assert lookup(10, 1) == naive(10, 1)
        assert lookup(-10, -1) == -naive(10, 1)
        assert lookup(100, 0) is None

    def test_naive_bound(self, plain_ctx):
        """Naive nets need a bound of at least 5."""
        with pytest.raises(ValueError):
            NaiveNet(plain_ctx, 4)

    def test_curve_reconstruction(self, plain_ctx):
        """The curve recovered from early values matches the source curve."""
        assert reconstruct_from_context(plain_ctx).matches(plain_ctx.curve)


class TestDivisionPolynomials:
    """Test the rank-1 net."""

    def test_psi_matches_row_zero(self, plain_ctx, naive):
        """W(n,0) = psi_n(Q) for n <= 50."""
        rank1 = Rank1Net(plain_ctx.first)
        for n in range(1, 51):
            assert rank1.psi(n) == naive(n, 0)

    @pytest.mark.parametrize("n", [2, 3, 7, 12])
    def test_multiples(self, plain_ctx, n):
        """Division polynomials give [n]Q."""
        Q = plain_ctx.first
        assert multiple_point(Q, n) == Q * n
