"""Tests for prime fields, extension towers and operation counting."""

import random

import pytest

from pairnet.fieldtower.counter import OpCounter, OpKind, counting, current_counter, paused
from pairnet.fieldtower.element import FieldElement
from pairnet.fieldtower.prime_field import FieldMismatchError, PrimeField, ZeroInversionError
from pairnet.fieldtower.tower import TowerSpec, build_tower


class TestPrimeField:
    """Test the base field."""

    def test_rejects_composite_modulus(self):
        """Composite moduli are rejected."""
        with pytest.raises(ValueError):
            PrimeField(375)

    def test_rejects_small_modulus(self):
        """Moduli up to 3 are rejected."""
        with pytest.raises(ValueError):
            PrimeField(3)

    def test_inverse(self):
        """inv(a) * a = 1."""
        field = PrimeField(373)
        assert (field.inv(5) * 5) % 373 == 1

    def test_zero_inversion(self):
        """Inverting zero raises."""
        with pytest.raises(ZeroInversionError):
            PrimeField(373).inv(373)

    def test_sqrt(self):
        """Square roots square back."""
        field = PrimeField(7207)
        root = field.sqrt(4)
        assert root is not None and root * root % 7207 == 4


class TestTower:
    """Test tower construction."""

    @pytest.fixture
    def tower(self, bn):
        return bn.tower

    def test_bn_chain(self, tower):
        """BN towers run 1, 2, 6, 12."""
        assert tower.chain == [1, 2, 6, 12]
        assert tower.twist_degree == 6

    def test_quartic_chain(self, kss16):
        """KSS16 towers are all quadratic."""
        assert kss16.tower.chain == [1, 2, 4, 8, 16]

    def test_round_trip(self, tower):
        """A serialized tower rebuilds to the same chain and arithmetic."""
        rebuilt = TowerSpec.from_dict(tower.to_dict())
        assert rebuilt.chain == tower.chain
        rng = random.Random(1)
        a = tower.random_raw(3, rng)
        b = tower.random_raw(3, rng)
        assert rebuilt.mul(3, a, b) == tower.mul(3, a, b)

    def test_build_rejects_unsupported_twist(self):
        """Only quartic and sextic twists are supported."""
        with pytest.raises(ValueError):
            build_tower(PrimeField(373), [1, 2], 3)


class TestFieldElement:
    """Test counted field arithmetic."""

    @pytest.fixture
    def tower(self, bn):
        return bn.tower

    def test_inverse(self, tower, rng):
        """a * a^-1 = 1 in F_p^12."""
        a = FieldElement.sample(tower, 12, rng)
        assert a * a.inverse() == 1

    def test_zero_inverse(self, tower):
        """Inverting zero raises."""
        with pytest.raises(ZeroInversionError):
            FieldElement.zero(tower, 6).inverse()

    def test_frobenius_order(self, tower, rng):
        """Frobenius has order 12 on F_p^12 and matches a^p."""
        a = FieldElement.sample(tower, 12, rng)
        assert a.frobenius(12) == a
        assert a.frobenius(1) == a.uncounted_pow(tower.p)

    def test_conjugate(self, tower, rng):
        """The quadratic conjugate is a^(p^6)."""
        a = FieldElement.sample(tower, 12, rng)
        assert a.conjugate() == a.frobenius(6)

    def test_embed_descend(self, tower, rng):
        """Embedded elements descend back; generic ones do not."""
        a = FieldElement.sample(tower, 2, rng)
        assert a.embed(12).descend(2) == a
        assert FieldElement.generator(tower, 12).descend(6) is None

    def test_mixed_degree_product(self, tower, rng):
        """A subfield scalar multiplies coefficient-wise."""
        a = FieldElement.sample(tower, 2, rng)
        b = FieldElement.sample(tower, 12, rng)
        assert a * b == a.embed(12) * b

    def test_foreign_tower(self, tower, bls12):
        """Operands from different towers do not mix."""
        with pytest.raises(FieldMismatchError):
            FieldElement.one(tower, 2) + FieldElement.one(bls12.tower, 2)

    def test_integer_operands(self, tower):
        """Integers lift into the field."""
        a = FieldElement.from_int(tower, 6, 5)
        assert a + 3 == 8
        assert a * 2 == 10
        assert int(a / 5) == 1


class TestCounting:
    """Test operation counting."""

    @pytest.fixture
    def tower(self, bn):
        return bn.tower

    def test_multiplication_tallies(self, tower, rng):
        """One M, one S and one I at the operand degree."""
        a = FieldElement.sample(tower, 12, rng)
        b = FieldElement.sample(tower, 12, rng)
        with counting("ops") as counter:
            a * b
            a.square()
            a.inverse()
        assert counter.to_dict() == {"I_12": 1, "M_12": 1, "S_12": 1}

    def test_subfield_scaling(self, tower, rng):
        """F_p^2 times F_p^12 costs six M_2."""
        a = FieldElement.sample(tower, 2, rng)
        b = FieldElement.sample(tower, 12, rng)
        with counting() as counter:
            a * b
        assert counter.get(OpKind.MUL, 2) == 6
        assert counter.get(OpKind.MUL, 12) == 0

    def test_additions_are_free(self, tower, rng):
        """Additions, negation and Frobenius are not counted."""
        a = FieldElement.sample(tower, 12, rng)
        with counting() as counter:
            -(a + a - a).frobenius(3)
        assert counter.is_empty()

    def test_nested_scopes_merge(self, tower, rng):
        """Inner scopes merge into the enclosing one."""
        a = FieldElement.sample(tower, 6, rng)
        with counting("outer") as outer:
            a * a
            with counting("inner") as inner:
                a.square()
            assert current_counter() is outer
        assert inner.to_dict() == {"S_6": 1}
        assert outer.to_dict() == {"M_6": 1, "S_6": 1}

    def test_paused(self, tower, rng):
        """Paused regions record nothing."""
        a = FieldElement.sample(tower, 6, rng)
        with counting() as counter:
            with paused():
                a * a
        assert counter.is_empty()

    def test_no_scope(self, tower, rng):
        """Outside a scope nothing is recorded."""
        assert current_counter() is None
        FieldElement.sample(tower, 6, rng).square()

    def test_negative_tally(self):
        """Negative counts are rejected."""
        with pytest.raises(ValueError):
            OpCounter().record(OpKind.MUL, 2, -1)

    def test_dict_round_trip_and_diff(self):
        """to_dict/from_dict keep tallies; diff reports per-entry deltas."""
        counter = OpCounter()
        counter.record(OpKind.MUL, 2, 19)
        counter.record(OpKind.SQR, 2, 3)
        counter.record(OpKind.NORM, 2, 4)
        rebuilt = OpCounter.from_dict(counter.to_dict())
        assert rebuilt.to_dict() == counter.to_dict()
        other = OpCounter.from_dict({"M_2": 18, "S_2": 3})
        assert counter.diff(other) == {"M_2": 1, "N_2": 4}
        assert counter.levels() == [2]
