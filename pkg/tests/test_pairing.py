"""Tests for net-based and Miller-based pairings."""

import pytest

from pairnet.curves.point import PointNotOnCurveError
from pairnet.curves.scalar import binary_step_counts
from pairnet.fieldtower.element import FieldElement
from pairnet.pairing.final_exp import cyclotomic_value, final_exp, frobenius_multi_pow, hard_part_digits
from pairnet.pairing.miller import divisor_check, line_value, miller, vertical_value
from pairnet.pairing.optimal_ate import (
    optimal_ate,
    optimal_ate_bls,
    optimal_ate_bn,
    optimal_ate_kss16,
    optimal_ate_miller,
    twisted_g1,
)
from pairnet.pairing.tate import TateForm, tate_miller, tate_net


@pytest.fixture(params=["bn", "bls12", "kss16"])
def instance(request, store):
    return store.get(request.param)


class TestOptimalAte:
    """Test the net-based optimal ate pairing."""

    def test_matches_miller(self, instance):
        """Net and Miller loops agree after the final exponentiation."""
        net = optimal_ate(instance, instance.g2, instance.g1)
        reference = optimal_ate_miller(instance, instance.g2, instance.g1)
        assert net.reduced == reference.reduced

    def test_nondegenerate_root_of_unity(self, instance):
        """e(Q, P) is a nontrivial r-th root of unity."""
        out = optimal_ate(instance, instance.g2, instance.g1)
        assert not out.reduced.is_one()
        assert out.is_root_of_unity(instance.r)

    def test_modified_and_plain_agree(self, instance):
        """Rescaling the net does not change the reduced value."""
        plain = optimal_ate(instance, instance.g2, instance.g1, modified=False)
        modified = optimal_ate(instance, instance.g2, instance.g1, modified=True)
        assert plain.reduced == modified.reduced

    def test_steps_and_counts(self, instance):
        """The walk takes the binary step counts of the loop scalar and is tallied."""
        out = optimal_ate(instance, instance.g2, instance.g1)
        assert out.steps == binary_step_counts(instance.loop_scalar)
        assert not out.counter.is_empty()
        assert instance.k in out.counter.levels()

    def test_unreduced(self, instance):
        """reduce=False leaves the raw value only."""
        out = optimal_ate(instance, instance.g2, instance.g1, reduce=False)
        assert out.reduced is None
        assert out.raw.degree == instance.k
        with pytest.raises(ValueError):
            out.is_root_of_unity(instance.r)

    def test_to_dict(self, bls12):
        """Exported outputs carry counts and the reduced digest."""
        data = optimal_ate(bls12, bls12.g2, bls12.g1).to_dict()
        assert data["family"] == "bls12"
        assert data["method"] == "net"
        assert data["loop_scalar"] == "-5"
        assert (data["doublings"], data["additions"]) == (2, 1)
        assert "reduced_digest" in data and "counts" in data

    def test_family_dispatch(self, bn, bls12, kss16):
        """Family-specific entry points reject other families."""
        with pytest.raises(ValueError):
            optimal_ate_bn(bls12, bls12.g2, bls12.g1)
        with pytest.raises(ValueError):
            optimal_ate_bls(bn, bn.g2, bn.g1)
        with pytest.raises(ValueError):
            optimal_ate_kss16(bn, bn.g2, bn.g1)

    def test_rejects_points_off_the_twist(self, bls12):
        """Q must lie on the twist and P on E over F_p."""
        with pytest.raises(PointNotOnCurveError):
            optimal_ate(bls12, bls12.g1, bls12.g1)
        with pytest.raises(PointNotOnCurveError):
            twisted_g1(bls12, bls12.curve.infinity())


class TestBilinearity:
    """Bilinearity on every family at desk scale."""

    @pytest.mark.parametrize("name", [
        "bn", "bls12", "kss16",
        pytest.param("bls24", marks=pytest.mark.slow),
        pytest.param("bls48", marks=pytest.mark.slow),
    ])
    def test_twenty_scalars(self, store, rng, name):
        """e([a]Q, P) = e(Q, [a]P) = e(Q, P)^a for 20 random a, and e(Q, P) != 1."""
        instance = store.get(name)
        Q, P = instance.g2, instance.g1
        base = optimal_ate(instance, Q, P).reduced
        assert not base.is_one()
        for _ in range(20):
            a = rng.randrange(2, instance.r)
            expected = base.uncounted_pow(a)
            assert optimal_ate(instance, Q * a, P).reduced == expected, a
            assert optimal_ate(instance, Q, P * a).reduced == expected, a


class TestHighDegreeFamilies:
    """One agreement check each for BLS24 and BLS48."""

    @pytest.mark.parametrize("name", ["bls24", "bls48"])
    def test_net_matches_miller(self, store, name):
        """Net and Miller loops agree on a nontrivial root of unity."""
        instance = store.get(name)
        net = optimal_ate(instance, instance.g2, instance.g1)
        assert net.reduced == optimal_ate_miller(instance, instance.g2, instance.g1).reduced
        assert not net.reduced.is_one()
        assert net.is_root_of_unity(instance.r)


class TestTate:
    """Test the Tate pairing forms."""

    @pytest.mark.parametrize("form", list(TateForm))
    def test_forms_match_miller(self, bls12, form):
        """Single and ratio forms equal f_{r,P}(Q) after reduction."""
        P, Q = bls12.g1, bls12.twist_map(bls12.g2)
        net = tate_net(bls12, P, Q, form=form)
        assert net.reduced == tate_miller(bls12, P, Q).reduced
        assert not net.reduced.is_one()

    def test_bn_single_form(self, bn):
        """BN Tate via the single-value form."""
        P, Q = bn.g1, bn.twist_map(bn.g2)
        assert tate_net(bn, P, Q).reduced == tate_miller(bn, P, Q).reduced

    def test_walk_length(self, bls12):
        """The net walks to r + 1."""
        P, Q = bls12.g1, bls12.twist_map(bls12.g2)
        assert tate_net(bls12, P, Q, reduce=False).steps == binary_step_counts(bls12.r + 1)


class TestMiller:
    """Test the reference Miller loop."""

    def test_divisor_relation(self, bls12):
        """f_{a+b} = f_a f_b l / v."""
        Q = bls12.twist_map(bls12.g2)
        P = bls12.lift_g1(bls12.g1)
        assert divisor_check(3, 5, Q, P)
        assert divisor_check(4, 4, Q, P)

    def test_base_and_evaluation_roles(self, bls12):
        """f_{2,base}(at) is the tangent at base over the vertical at [2]base, both evaluated at `at`."""
        Q = bls12.twist_map(bls12.g2)
        P = bls12.lift_g1(bls12.g1)
        tangent, doubled = line_value(Q, Q, P)
        assert doubled == Q * 2
        assert miller(2, base=Q, at=P) == tangent / vertical_value(doubled, P)

    def test_tate_builds_on_first_argument(self, bls12):
        """The Tate reference is f_{r,P}(Q)."""
        P, Q = bls12.g1, bls12.twist_map(bls12.g2)
        raw = tate_miller(bls12, P, Q, reduce=False).raw
        assert raw == miller(bls12.r, base=P, at=Q).embed(bls12.k)

    def test_rejects_nonpositive_length(self, bls12):
        """Loop lengths start at 1."""
        with pytest.raises(ValueError):
            miller(0, bls12.g1, bls12.g1)


class TestFinalExponentiation:
    """Test the final exponentiation."""

    def test_lands_in_mu_r(self, bls12, rng):
        """Reduced values are r-th roots of unity."""
        f = FieldElement.sample(bls12.tower, 12, rng)
        assert final_exp(f, bls12).uncounted_pow(bls12.r).is_one()

    def test_kills_subfield_elements(self, bls12, rng):
        """Elements of F_p^(k/2) reduce to 1."""
        c = FieldElement.sample(bls12.tower, 6, rng)
        assert final_exp(c.embed(12), bls12).is_one()

    def test_multiplicative(self, bn, rng):
        """final_exp(fg) = final_exp(f) final_exp(g)."""
        f = FieldElement.sample(bn.tower, 12, rng)
        g = FieldElement.sample(bn.tower, 12, rng)
        assert final_exp(f * g, bn) == final_exp(f, bn) * final_exp(g, bn)

    @pytest.mark.parametrize("name", ["bls12", "kss16", pytest.param("bls48", marks=pytest.mark.slow)])
    def test_hard_part_digits(self, store, name):
        """Signed base-p digits recombine to Phi_k(p)/r."""
        instance = store.get(name)
        k, p, r = instance.k, instance.p, instance.r
        digits = hard_part_digits(k, p, r)
        assert sum(d.value * p ** i for i, d in enumerate(digits)) == cyclotomic_value(k, p) // r

    def test_multi_pow_matches_plain_pow(self, bn, rng):
        """The Frobenius multi-exponentiation equals square-and-multiply on norm-one elements."""
        f = FieldElement.sample(bn.tower, 12, rng)
        g = f.conjugate() * f.inverse()
        digits = hard_part_digits(12, bn.p, bn.r)
        exponent = cyclotomic_value(12, bn.p) // bn.r
        assert frobenius_multi_pow(g, digits) == g.uncounted_pow(exponent)

    def test_matches_full_exponent(self, kss16, rng):
        """The split exponent equals (p^k - 1)/r."""
        f = FieldElement.sample(kss16.tower, 16, rng)
        assert final_exp(f, kss16) == f.uncounted_pow((kss16.p ** 16 - 1) // kss16.r)

    def test_cyclotomic_value(self):
        """Phi_12(p) = p^4 - p^2 + 1."""
        assert cyclotomic_value(12, 373) == 373 ** 4 - 373 ** 2 + 1
