"""Tests for curve families, seeds, desk-scale search and instances."""

import pytest

from pairnet.curves.families import FAMILIES, CurveFamily, get_family
from pairnet.curves.instance import InstanceError, instance_from_dict, instantiate
from pairnet.curves.point import PointNotOnCurveError
from pairnet.curves.scalar import SignedExpansion, binary_step_counts, parse_seed
from pairnet.curves.search import search_desk_seed, subgroup_prime


class TestFamilies:
    """Test family polynomials."""

    def test_lookup(self):
        """Families resolve by name, case-insensitively."""
        assert get_family("BLS12").family is CurveFamily.BLS12
        with pytest.raises(ValueError):
            get_family("mnt6")

    @pytest.mark.parametrize("name,x,p,r", [
        ("bn", -2, 373, 349),
        ("bls12", -5, 7207, 601),
        ("bls24", -5, 4680007, 390001),
        ("bls48", -8, 7599823918202899, 487824887233),
    ])
    def test_desk_primes(self, name, x, p, r):
        """p(x) and r(x) at the recorded desk seeds."""
        params = get_family(name)
        assert params.p(x) == p
        assert params.r(x) == r

    def test_kss16_subgroup(self):
        """KSS16 at x = 95 keeps the largest prime factor of r(x)."""
        params = get_family("kss16")
        assert params.p(95) == 62415714535676897
        assert subgroup_prime(params.r(95)) == 16417

    def test_chains_and_twists(self):
        """Field degrees, twist degrees and twist fields."""
        expected = {
            CurveFamily.BN: ((1, 2, 6, 12), 6, 2),
            CurveFamily.BLS12: ((1, 2, 6, 12), 6, 2),
            CurveFamily.BLS24: ((1, 2, 4, 12, 24), 6, 4),
            CurveFamily.BLS48: ((1, 2, 4, 8, 24, 48), 6, 8),
            CurveFamily.KSS16: ((1, 2, 4, 8, 16), 4, 4),
        }
        for family, (chain, delta, e) in expected.items():
            params = FAMILIES[family]
            assert params.chain == chain
            assert params.twist_degree == delta
            assert params.e == e

    def test_inadmissible_seed(self):
        """KSS16 needs x = +-25 mod 70."""
        assert not get_family("kss16").admissible(1)
        assert get_family("kss16").admissible(95)

    def test_loop_scalars(self):
        """BN loops over 6x + 2, the others over x."""
        assert get_family("bn").loop_scalar(-2) == -10
        assert get_family("bls12").loop_scalar(-5) == -5
        assert get_family("kss16").loop_scalar(95) == 95


class TestSeeds:
    """Test seed expressions and step counts."""

    def test_parse_expression(self):
        """Signed 2-power expressions evaluate exactly."""
        seed = parse_seed("2^114+2^101-2^14-1")
        assert seed.value == 2 ** 114 + 2 ** 101 - 2 ** 14 - 1
        assert (seed.doublings, seed.additions) == (114, 3)

    def test_parse_negative_expression(self):
        """A leading minus sign is accepted."""
        seed = parse_seed("-2^77+2^50+2^33")
        assert seed.value == -(2 ** 77) + 2 ** 50 + 2 ** 33
        assert (seed.doublings, seed.additions) == (77, 2)

    def test_decimal_seed_uses_naf(self):
        """Decimal seeds expand in non-adjacent form."""
        seed = parse_seed("12")
        assert seed.value == 12
        assert str(seed) == "2^4-2^2"

    def test_malformed(self):
        """Malformed expressions raise."""
        for text in ("", "2^", "abc", "2^3 2^"):
            with pytest.raises(ValueError):
                parse_seed(text)

    def test_affine_merges_exponents(self):
        """6x + 2 on the BN seed merges equal exponents."""
        loop = parse_seed("2^114+2^101-2^14-1").affine(6, 2)
        assert loop.value == 6 * (2 ** 114 + 2 ** 101 - 2 ** 14 - 1) + 2
        assert (loop.doublings, loop.additions) == (116, 6)

    def test_from_pairs_cancels(self):
        """Opposite terms cancel."""
        assert SignedExpansion.from_pairs([(1, 5), (-1, 5), (1, 2)]).value == 4

    @pytest.mark.parametrize("name,label,r_bits,p_bits", [
        ("bn", "128-bit", 462, 462),
        ("bls12", "128-bit", 308, 461),
        ("bls24", "192-bit", 449, 559),
        ("bls24", "256-bit", 827, 1032),
        ("bls48", "256-bit", 512, 575),
        ("kss16", "128-bit", 263, 339),
    ])
    def test_published_seed_sizes(self, name, label, r_bits, p_bits):
        """Published seeds are admissible; sizes are recomputed from the polynomials."""
        params = get_family(name)
        x = parse_seed(params.published_seed(label).expression).value
        assert params.admissible(x)
        assert (params.r(x).bit_length(), params.p(x).bit_length()) == (r_bits, p_bits)

    @pytest.mark.parametrize("name,label,published,recomputed", [
        ("bn", "128-bit", (280, 280), (462, 462)),
        ("bls12", "128-bit", (273, 616), (308, 461)),
        ("bls24", "192-bit", (427, 558), (449, 559)),
        ("bls24", "256-bit", (581, 1028), (827, 1032)),
        ("kss16", "128-bit", (281, 340), (263, 339)),
        ("bls48", "256-bit", (512, 575), (512, 575)),
    ])
    def test_published_sizes_against_recomputed(self, name, label, published, recomputed):
        """Recorded bit lengths stay as published; only BLS48 agrees with its polynomials."""
        params = get_family(name)
        seed = params.published_seed(label)
        x = parse_seed(seed.expression).value
        assert (seed.published_r_bits, seed.published_p_bits) == published
        assert (params.r(x).bit_length(), params.p(x).bit_length()) == recomputed
        assert (published == recomputed) == (name == "bls48")

    def test_binary_step_counts(self):
        """Binary walk: bitlen - 1 doublings, popcount - 1 additions."""
        assert binary_step_counts(-10) == (3, 1)
        assert binary_step_counts(95) == (6, 5)
        with pytest.raises(ValueError):
            binary_step_counts(0)


class TestSearch:
    """Test the desk-scale seed search."""

    @pytest.mark.parametrize("name,x", [("bn", -2), ("bls12", -5), ("kss16", 95)])
    def test_recorded_seeds(self, name, x):
        """The search reproduces the shipped seeds."""
        assert search_desk_seed(get_family(name)).x == x

    def test_subgroup_prime(self):
        """Prime inputs are returned; smooth cofactors are stripped."""
        assert subgroup_prime(601) == 601
        assert subgroup_prime(4 * 601) == 601
        assert subgroup_prime(1) is None


class TestInstance:
    """Test instance construction."""

    @pytest.fixture(params=["bn", "bls12", "kss16"])
    def instance(self, request, store):
        return store.get(request.param)

    def test_generators_have_order_r(self, instance):
        """G1 and G2 generators have order r."""
        assert instance.g1.on_curve() and instance.g2.on_curve()
        assert (instance.g1 * instance.r).is_infinity
        assert (instance.g2 * instance.r).is_infinity

    def test_twist_round_trip(self, instance):
        """Twist points map onto E over F_p^k and back."""
        image = instance.twist_map(instance.g2)
        assert image.on_curve()
        assert instance.untwist_inverse(image) == instance.g2

    def test_g2_is_frobenius_eigenspace(self, instance):
        """pi(Q) = [p]Q on the image of G2."""
        image = instance.twist_map(instance.g2)
        assert instance.frobenius_point(image) == image * instance.p

    def test_theta_power_in_twist_field(self, instance):
        """theta^delta lies in F_p^e."""
        assert instance.xi is not None
        assert instance.xi.degree == instance.e

    def test_embedding_degree(self, instance):
        """r divides p^k - 1 and no smaller p^i - 1."""
        assert instance.verify_embedding_degree()

    def test_export_round_trip(self, instance):
        """Exported documents rebuild the same instance."""
        rebuilt = instance_from_dict(instance.params, instance.to_dict())
        assert rebuilt.p == instance.p and rebuilt.r == instance.r
        assert rebuilt.g1.x.coeffs() == instance.g1.x.coeffs()
        assert rebuilt.g2.y.coeffs() == instance.g2.y.coeffs()

    def test_tampered_export(self, bn):
        """A generator moved off its curve is rejected on import."""
        data = bn.to_dict()
        data["g1"]["y"] = [str((int(data["g1"]["y"][0]) + 1) % bn.p)]
        with pytest.raises(PointNotOnCurveError):
            instance_from_dict(bn.params, data)

    def test_twist_map_rejects_foreign_points(self, bn):
        """Only twist points can be mapped."""
        with pytest.raises(PointNotOnCurveError):
            bn.twist_map(bn.g1)

    def test_composite_p(self):
        """BN at x = 2 has composite p."""
        with pytest.raises(InstanceError):
            instantiate(get_family("bn"), 2)

    def test_inadmissible(self):
        """Inadmissible seeds are rejected."""
        with pytest.raises(InstanceError):
            instantiate(get_family("kss16"), 1)

    def test_build_without_groups(self):
        """Group generators are optional."""
        instance = instantiate(get_family("bls12"), -5, build_groups=False)
        assert instance.g1 is None
        with pytest.raises(InstanceError):
            instance.g1_point(2)
