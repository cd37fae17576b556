"""
Curve Instances

Implements:
1. Instantiation of a family at a seed x (primes, trace, tower, twist)
2. Twist selection by group order
3. Generators of G1 (on E over F_p) and G2 (on the twist over F_{p^e})
4. The twist isomorphism (x, y) -> (x theta^2, y theta^3) and its inverse
5. Embedding-degree and Frobenius checks
"""

import logging
import math
import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from Crypto.Util.number import isPrime

from pairnet.curves.families import FamilyParams
from pairnet.curves.point import Point, PointNotOnCurveError, WeierstrassCurve
from pairnet.fieldtower.counter import paused
from pairnet.fieldtower.element import FieldElement
from pairnet.fieldtower.prime_field import PrimeField
from pairnet.fieldtower.tower import Raw, TowerSpec, build_tower

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

DEFAULT_RNG_SEED = 20240607


class InstanceError(ValueError):
    """A seed or configuration does not yield a usable curve instance."""


def embedding_degree(p: int, r: int, limit: int = 64) -> Optional[int]:
    """Least k <= limit with r | p^k - 1."""
    value = 1
    for k in range(1, limit + 1):
        value = value * p % r
        if value == 1:
            return k
    return None


def trace_powers(p: int, t: int, e: int) -> int:
    """Trace of Frobenius over F_{p^e}: t_{i+1} = t t_i - p t_{i-1}."""
    prev, cur = 2, t
    for _ in range(e - 1):
        prev, cur = cur, t * cur - p * prev
    return cur


def twist_order_candidates(p: int, t: int, e: int, twist_degree: int) -> List[int]:
    """
    Orders of the degree-delta twists of E over F_{p^e}.

    Raises:
        InstanceError: If the CM discriminant does not give a square
    """
    q = p ** e
    te = trace_powers(p, t, e)
    if twist_degree == 6:
        disc = 4 * q - te * te
        if disc % 3:
            raise InstanceError("4q - t_e^2 is not divisible by 3")
        f = math.isqrt(disc // 3)
        if f * f != disc // 3:
            raise InstanceError("(4q - t_e^2)/3 is not a square")
        traces = [te, -te, (te + 3 * f) // 2, (te - 3 * f) // 2, (-te + 3 * f) // 2, (-te - 3 * f) // 2]
    elif twist_degree == 4:
        disc = 4 * q - te * te
        f = math.isqrt(disc)
        if f * f != disc:
            raise InstanceError("4q - t_e^2 is not a square")
        traces = [te, -te, f, -f]
    else:
        raise InstanceError(f"Unsupported twist degree {twist_degree}")
    return [q + 1 - tr for tr in traces]


@dataclass
class CurveInstance:
    """
    One concrete curve of a family.

    Attributes:
        params: Family parametrization
        x: Seed
        p, r, t: Field prime, subgroup order, trace
        tower: Extension tower with twist generator theta
        curve: E over F_p
        twist: E' over F_{p^e} with E' = E under (x, y) -> (x theta^2, y theta^3)
        g1: Generator of G1 (None when groups were not built)
        g2: Generator of G2 on the twist
    """
    params: FamilyParams
    x: int
    p: int
    r: int
    t: int
    tower: TowerSpec
    curve: WeierstrassCurve
    twist: WeierstrassCurve
    twist_order: int
    g1: Optional[Point] = None
    g2: Optional[Point] = None
    _cache: Dict[str, Any] = field(default_factory=dict, repr=False)

    @property
    def family(self) -> str:
        return self.params.name

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def e(self) -> int:
        return self.params.e

    @property
    def twist_degree(self) -> int:
        return self.params.twist_degree

    @property
    def loop_scalar(self) -> int:
        return self.params.loop_scalar(self.x)

    @property
    def curve_order(self) -> int:
        return self.p + 1 - self.t

    @property
    def theta(self) -> FieldElement:
        if "theta" not in self._cache:
            self._cache["theta"] = FieldElement.generator(self.tower, self.k)
        return self._cache["theta"]

    def theta_power(self, exponent: int) -> FieldElement:
        """theta^exponent, cached; uncounted precomputation."""
        key = f"theta^{exponent}"
        if key not in self._cache:
            with paused():
                if exponent < 0:
                    self._cache[key] = self.theta_power(-exponent).inverse()
                else:
                    self._cache[key] = self.theta.uncounted_pow(exponent)
        return self._cache[key]

    @property
    def xi(self) -> FieldElement:
        """theta^delta as an element of F_{p^e}."""
        return self.theta_power(self.twist_degree).descend(self.e)

    @property
    def curve_k(self) -> WeierstrassCurve:
        if "curve_k" not in self._cache:
            self._cache["curve_k"] = self.curve.extend(self.k, "E/F_p^k")
        return self._cache["curve_k"]

    @property
    def twist_k(self) -> WeierstrassCurve:
        """The twist over F_{p^k}, home of P~ = (x theta^-2, y theta^-3)."""
        if "twist_k" not in self._cache:
            self._cache["twist_k"] = self.twist.extend(self.k, "E'/F_p^k")
        return self._cache["twist_k"]

    def frobenius_constants(self, power: int = 1) -> Tuple[FieldElement, FieldElement]:
        """
        (theta^(2(p^i - 1)), theta^(3(p^i - 1))) in F_{p^e}, so that
        pi^i(Q~) = (g2 x^(p^i), g3 y^(p^i)) on the twist.

        Raises:
            InstanceError: If the constants do not lie in F_{p^e}
        """
        key = f"frobenius_{power}"
        if key not in self._cache:
            n = self.p ** power - 1
            with paused():
                g2 = self.theta.uncounted_pow(2 * n).descend(self.e)
                g3 = self.theta.uncounted_pow(3 * n).descend(self.e)
            if g2 is None or g3 is None:
                raise InstanceError(f"Frobenius constants of degree {power} do not lie in F_p^{self.e}")
            self._cache[key] = (g2, g3)
        return self._cache[key]

    def twist_map(self, pt: Point) -> Point:
        """
        Map a twist point to E over F_{p^k}.

        Raises:
            PointNotOnCurveError: If pt is not on the twist
        """
        if pt.curve != self.twist:
            raise PointNotOnCurveError("Point does not lie on the twist curve")
        if pt.is_infinity:
            return self.curve_k.infinity()
        if not pt.on_curve():
            raise PointNotOnCurveError(f"{pt} is not on the twist curve")
        with paused():
            x = pt.x.embed(self.k) * self.theta_power(2)
            y = pt.y.embed(self.k) * self.theta_power(3)
        return Point(self.curve_k, x, y)

    def untwist_inverse(self, pt: Point) -> Point:
        """
        Inverse of twist_map.

        Raises:
            PointNotOnCurveError: If the image has no F_{p^e} coordinates
        """
        if pt.is_infinity:
            return self.twist.infinity()
        with paused():
            x = (pt.x.embed(self.k) * self.theta_power(-2)).descend(self.e)
            y = (pt.y.embed(self.k) * self.theta_power(-3)).descend(self.e)
        if x is None or y is None:
            raise PointNotOnCurveError(f"{pt} is not the image of a twist point")
        return self.twist.point(x, y)

    def lift_g1(self, pt: Point) -> Point:
        """A G1 point as a point of E over F_{p^k}."""
        if pt.is_infinity:
            return self.curve_k.infinity()
        return Point(self.curve_k, pt.x.embed(self.k), pt.y.embed(self.k))

    def frobenius_point(self, pt: Point) -> Point:
        if pt.is_infinity:
            return pt
        return Point(pt.curve, pt.x.frobenius(1), pt.y.frobenius(1))

    def g1_point(self, scalar: int) -> Point:
        self._require_groups()
        return self.g1 * scalar

    def g2_point(self, scalar: int) -> Point:
        self._require_groups()
        return self.g2 * scalar

    def _require_groups(self) -> None:
        if self.g1 is None or self.g2 is None:
            raise InstanceError(f"{self.family} instance at x={self.x} was built without group generators")

    def bit_lengths(self) -> Tuple[int, int]:
        """(ceil(log2 r), ceil(log2 p))."""
        return _ceil_log2(self.r), _ceil_log2(self.p)

    def verify_embedding_degree(self) -> bool:
        return embedding_degree(self.p, self.r, self.k) == self.k

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "family": self.family,
            "x": str(self.x),
            "p": str(self.p),
            "r": str(self.r),
            "t": str(self.t),
            "curve": self.curve.to_dict(),
            "twist": self.twist.to_dict(),
            "twist_order": str(self.twist_order),
            "tower": self.tower.to_dict(),
        }
        if self.g1 is not None:
            data["g1"] = self.g1.to_json()
        if self.g2 is not None:
            data["g2"] = self.g2.to_json()
        return data


def _ceil_log2(n: int) -> int:
    return (n - 1).bit_length()


def _find_curve_coefficients(params: FamilyParams, tower: TowerSpec,
                             order: int, rng: random.Random) -> Tuple[int, int]:
    """Smallest |c| making y^2 = x^3 + c (or x^3 + c x) have `order` points."""
    for magnitude in range(1, 512):
        for c in (magnitude, -magnitude):
            a, b = (0, c) if params.twist_degree == 6 else (c, 0)
            try:
                curve = WeierstrassCurve(FieldElement.from_int(tower, 1, a), FieldElement.from_int(tower, 1, b))
            except ValueError:
                continue
            if all((curve.random_point(rng) * order).is_infinity for _ in range(3)):
                return a, b
    raise InstanceError(f"No {params.name} curve coefficient with {order} points found")


def instantiate(
    params: FamilyParams,
    x: int,
    r: Optional[int] = None,
    curve_coeffs: Optional[Tuple[int, int]] = None,
    build_groups: bool = True,
    rng_seed: int = DEFAULT_RNG_SEED,
) -> CurveInstance:
    """
    Build a fully wired curve instance.

    Args:
        params: Family parametrization
        x: Seed
        r: Subgroup order override (a prime factor of r(x))
        curve_coeffs: (A, B) of E; searched when omitted
        build_groups: Sample generators of G1 and G2
        rng_seed: Seed of the deterministic sampler

    Returns:
        CurveInstance

    Raises:
        InstanceError: On inadmissible seeds, composite p or r, or no twist
    """
    with paused():
        return _instantiate(params, x, r, curve_coeffs, build_groups, rng_seed)


def _instantiate(params, x, r_override, curve_coeffs, build_groups, rng_seed) -> CurveInstance:
    if not params.admissible(x):
        raise InstanceError(f"Seed x={x} is inadmissible for {params.name} ({params.congruence or 'non-integral'})")
    p, r_full, t = params.p(x), params.r(x), params.t(x)
    if p <= 3 or not isPrime(p):
        raise InstanceError(f"p(x) is not prime for {params.name} at x={x}: {p}")
    if r_override is not None:
        if r_full % r_override != 0:
            raise InstanceError(f"r={r_override} does not divide r(x)={r_full}")
        r = r_override
    else:
        r = r_full
    if r <= 3 or not isPrime(r):
        raise InstanceError(f"r(x) is not prime for {params.name} at x={x}: {r}")
    n1 = p + 1 - t
    if n1 % r:
        raise InstanceError(f"r does not divide p + 1 - t for {params.name} at x={x}")
    if embedding_degree(p, r, params.k) != params.k:
        raise InstanceError(f"Embedding degree of r={r} is not {params.k}")

    rng = random.Random(rng_seed)
    base_field = PrimeField(p, check_prime=False)
    candidates = [n for n in twist_order_candidates(p, t, params.e, params.twist_degree) if n % r == 0]
    if not candidates:
        raise InstanceError(f"No twist of {params.name} over F_p^{params.e} has order divisible by r")

    flat = TowerSpec(base_field, [])
    if curve_coeffs is None:
        a_int, b_int = _find_curve_coefficients(params, flat, n1, rng)
    else:
        a_int, b_int = curve_coeffs
        check = WeierstrassCurve(FieldElement.from_int(flat, 1, a_int), FieldElement.from_int(flat, 1, b_int))
        if not (check.random_point(rng) * n1).is_infinity:
            raise InstanceError(f"y^2 = x^3 + {a_int}x + {b_int} does not have p + 1 - t points")
    chosen: Dict[str, int] = {}

    def accept_twist(partial: TowerSpec, xi_raw: Raw) -> bool:
        e = partial.chain[-1]
        xi = FieldElement(partial, e, xi_raw)
        xi_inv = xi.inverse()
        a_tw = FieldElement.from_int(partial, e, a_int) * xi_inv if a_int else FieldElement.zero(partial, e)
        b_tw = FieldElement.from_int(partial, e, b_int) * xi_inv if b_int else FieldElement.zero(partial, e)
        twist = WeierstrassCurve(a_tw, b_tw, "E'")
        probe = twist.random_point(rng)
        for n in candidates:
            if (probe * n).is_infinity:
                chosen["order"] = n
                return True
        return False

    tower = build_tower(base_field, params.lower_chain, params.twist_degree, accept_twist)
    if tower.chain != list(params.chain):
        raise InstanceError(f"Tower chain {tower.chain} does not match {params.chain}")

    e = params.e
    curve = WeierstrassCurve(FieldElement.from_int(tower, 1, a_int), FieldElement.from_int(tower, 1, b_int), "E")
    xi = FieldElement.generator(tower, params.k).uncounted_pow(params.twist_degree).descend(e)
    xi_inv = xi.inverse()
    twist = WeierstrassCurve(curve.a.embed(e) * xi_inv, curve.b.embed(e) * xi_inv, "E'")
    instance = CurveInstance(params=params, x=x, p=p, r=r, t=t, tower=tower, curve=curve, twist=twist,
                             twist_order=chosen["order"])
    if build_groups:
        instance.g1 = _sample_subgroup(curve, n1 // r, r, rng)
        instance.g2 = _sample_subgroup(twist, instance.twist_order // r, r, rng)
    logger.info(f"Instantiated {params.name} at x={x}: p has {p.bit_length()} bits, r has {r.bit_length()} bits")
    return instance


def _sample_subgroup(curve: WeierstrassCurve, cofactor: int, r: int, rng: random.Random) -> Point:
    for _ in range(64):
        candidate = curve.random_point(rng) * cofactor
        if candidate.is_infinity:
            continue
        if not (candidate * r).is_infinity:
            raise InstanceError(f"Cofactor-cleared point on {curve.name} does not have order r")
        return candidate
    raise InstanceError(f"Could not sample an order-r point on {curve.name}")


def instance_from_dict(params: FamilyParams, data: Dict[str, Any]) -> CurveInstance:
    """
    Rebuild an instance from its exported document, re-validating points.

    Raises:
        InstanceError: On inconsistent documents
        PointNotOnCurveError: If a generator is off its curve
    """
    with paused():
        tower = TowerSpec.from_dict(data["tower"])
        x, p, r, t = (int(data[key]) for key in ("x", "p", "r", "t"))
        if tower.p != p or params.p(x) != p or params.t(x) != t:
            raise InstanceError(f"Document for {params.name} at x={x} is inconsistent with the family")
        if params.r(x) % r:
            raise InstanceError(f"r={r} does not divide r(x) at x={x}")

        def element(values: List[str], degree: int) -> FieldElement:
            return FieldElement.from_coeffs(tower, degree, [int(v) for v in values])

        curve = WeierstrassCurve(element(data["curve"]["a"], 1), element(data["curve"]["b"], 1), "E")
        e = params.e
        twist = WeierstrassCurve(element(data["twist"]["a"], e), element(data["twist"]["b"], e), "E'")
        instance = CurveInstance(params=params, x=x, p=p, r=r, t=t, tower=tower, curve=curve, twist=twist,
                                 twist_order=int(data["twist_order"]))
        expected = twist.b * instance.xi if params.twist_degree == 6 else twist.a * instance.xi
        if expected != (curve.b if params.twist_degree == 6 else curve.a):
            raise InstanceError("Twist coefficients do not match theta^delta")
        if data.get("g1"):
            instance.g1 = curve.point(element(data["g1"]["x"], 1), element(data["g1"]["y"], 1))
        if data.get("g2"):
            instance.g2 = twist.point(element(data["g2"]["x"], e), element(data["g2"]["y"], e))
    return instance
