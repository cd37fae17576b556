"""
Extension Tower Construction

Implements:
1. Binomial extension steps (quadratic and cubic) over a degree chain
2. Raw nested-tuple arithmetic with Karatsuba multiplication
3. Frobenius action via precomputed generator images
4. Non-residue search and verification
5. Tower serialization

An element of degree d is stored as a tuple of `arity` coefficients of
the level below, down to plain integers for F_p. Raw arithmetic here is
never counted; FieldElement does the bookkeeping.
"""

import logging
import random
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence

from pairnet.fieldtower.prime_field import (
    FieldMismatchError,
    PrimeField,
    ZeroInversionError,
)

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

Raw = Any


@dataclass(frozen=True)
class ExtensionStep:
    """One binomial step F_{p^d}[u] / (u^arity - non_residue)."""
    base_degree: int
    arity: int
    non_residue: Raw
    # True when non_residue is the generator of the base level (w^2 = v)
    over_generator: bool = False

    @property
    def degree(self) -> int:
        return self.base_degree * self.arity


class TowerSpec:
    """
    A chain of binomial extensions F_p = K_0 < K_1 < ... < K_n.

    Attributes:
        field: Base prime field
        steps: Extension steps; steps[i] builds level i + 1
        twist_degree: delta, with the top generator theta satisfying
            theta^delta in F_{p^e}, e = k / delta
    """

    def __init__(self, field: PrimeField, steps: Sequence[ExtensionStep], twist_degree: int = 1):
        self.field = field
        self.p = field.p
        self.steps = list(steps)
        self.chain = [1] + [step.degree for step in self.steps]
        self._level_of = {degree: i for i, degree in enumerate(self.chain)}
        for i, step in enumerate(self.steps):
            if step.base_degree != self.chain[i]:
                raise ValueError(f"Step {i} extends degree {step.base_degree}, expected {self.chain[i]}")
            if step.arity not in (2, 3):
                raise ValueError(f"Unsupported step arity {step.arity}")
        self.twist_degree = twist_degree
        self.k = self.chain[-1]
        self._zeros: List[Raw] = [0]
        self._ones: List[Raw] = [1]
        for step in self.steps:
            below_zero, below_one = self._zeros[-1], self._ones[-1]
            self._zeros.append((below_zero,) * step.arity)
            self._ones.append((below_one,) + (below_zero,) * (step.arity - 1))
        self._frob_powers: List[Optional[List[Raw]]] = [None] * len(self.chain)
        self._precompute_frobenius()

    # Level helpers

    def level(self, degree: int) -> int:
        try:
            return self._level_of[degree]
        except KeyError:
            raise FieldMismatchError(f"Degree {degree} is not on the chain {self.chain}") from None

    def has_degree(self, degree: int) -> bool:
        return degree in self._level_of

    def zero_raw(self, level: int) -> Raw:
        return self._zeros[level]

    def one_raw(self, level: int) -> Raw:
        return self._ones[level]

    def generator_raw(self, level: int) -> Raw:
        """The adjoined root u of step level-1 (level >= 1)."""
        if level == 0:
            raise FieldMismatchError("F_p has no adjoined generator")
        arity = self.steps[level - 1].arity
        below = level - 1
        return (self._zeros[below], self._ones[below]) + (self._zeros[below],) * (arity - 2)

    def from_int_raw(self, level: int, value: int) -> Raw:
        value %= self.p
        raw: Raw = value
        for i in range(level):
            raw = (raw,) + (self._zeros[i],) * (self.steps[i].arity - 1)
        return raw

    # Raw arithmetic

    def add(self, level: int, a: Raw, b: Raw) -> Raw:
        if level == 0:
            return (a + b) % self.p
        return tuple(self.add(level - 1, x, y) for x, y in zip(a, b))

    def sub(self, level: int, a: Raw, b: Raw) -> Raw:
        if level == 0:
            return (a - b) % self.p
        return tuple(self.sub(level - 1, x, y) for x, y in zip(a, b))

    def neg(self, level: int, a: Raw) -> Raw:
        if level == 0:
            return (-a) % self.p
        return tuple(self.neg(level - 1, x) for x in a)

    def scale_int(self, level: int, a: Raw, n: int) -> Raw:
        if level == 0:
            return a * n % self.p
        return tuple(self.scale_int(level - 1, x, n) for x in a)

    def is_zero(self, level: int, a: Raw) -> bool:
        return a == self._zeros[level]

    def mul_non_residue(self, level: int, a: Raw) -> Raw:
        """Multiply a level-(level-1) value by the non-residue of step `level`."""
        step = self.steps[level - 1]
        below = level - 1
        if step.over_generator:
            # a * u_below, where u_below^arity_below = nr_below
            return (self.mul_non_residue(below, a[-1]),) + tuple(a[:-1])
        return self.mul(below, a, step.non_residue)

    def mul(self, level: int, a: Raw, b: Raw) -> Raw:
        if level == 0:
            return a * b % self.p
        below = level - 1
        if self.steps[below].arity == 2:
            a0, a1 = a
            b0, b1 = b
            v0 = self.mul(below, a0, b0)
            v1 = self.mul(below, a1, b1)
            mid = self.mul(below, self.add(below, a0, a1), self.add(below, b0, b1))
            c0 = self.add(below, v0, self.mul_non_residue(level, v1))
            c1 = self.sub(below, self.sub(below, mid, v0), v1)
            return (c0, c1)
        a0, a1, a2 = a
        b0, b1, b2 = b
        v0 = self.mul(below, a0, b0)
        v1 = self.mul(below, a1, b1)
        v2 = self.mul(below, a2, b2)
        t12 = self.mul(below, self.add(below, a1, a2), self.add(below, b1, b2))
        t01 = self.mul(below, self.add(below, a0, a1), self.add(below, b0, b1))
        t02 = self.mul(below, self.add(below, a0, a2), self.add(below, b0, b2))
        c0 = self.add(below, v0, self.mul_non_residue(level, self.sub(below, self.sub(below, t12, v1), v2)))
        c1 = self.add(below, self.sub(below, self.sub(below, t01, v0), v1), self.mul_non_residue(level, v2))
        c2 = self.add(below, self.sub(below, t02, v0), self.sub(below, v1, v2))
        return (c0, c1, c2)

    def sqr(self, level: int, a: Raw) -> Raw:
        if level == 0:
            return a * a % self.p
        below = level - 1
        if self.steps[below].arity == 2:
            a0, a1 = a
            v = self.mul(below, a0, a1)
            t = self.mul(
                below,
                self.add(below, a0, a1),
                self.add(below, a0, self.mul_non_residue(level, a1)),
            )
            c0 = self.sub(below, self.sub(below, t, v), self.mul_non_residue(level, v))
            c1 = self.add(below, v, v)
            return (c0, c1)
        a0, a1, a2 = a
        s0 = self.sqr(below, a0)
        ab = self.mul(below, a0, a1)
        s1 = self.add(below, ab, ab)
        s2 = self.sqr(below, self.add(below, self.sub(below, a0, a1), a2))
        bc = self.mul(below, a1, a2)
        s3 = self.add(below, bc, bc)
        s4 = self.sqr(below, a2)
        c0 = self.add(below, s0, self.mul_non_residue(level, s3))
        c1 = self.add(below, s1, self.mul_non_residue(level, s4))
        c2 = self.sub(below, self.sub(below, self.add(below, self.add(below, s1, s2), s3), s0), s4)
        return (c0, c1, c2)

    def inv(self, level: int, a: Raw) -> Raw:
        if self.is_zero(level, a):
            raise ZeroInversionError(f"Inversion of zero in F_p^{self.chain[level]}")
        if level == 0:
            return self.field.inv(a)
        below = level - 1
        if self.steps[below].arity == 2:
            a0, a1 = a
            norm = self.sub(below, self.sqr(below, a0), self.mul_non_residue(level, self.sqr(below, a1)))
            n_inv = self.inv(below, norm)
            return (self.mul(below, a0, n_inv), self.neg(below, self.mul(below, a1, n_inv)))
        a0, a1, a2 = a
        t0 = self.sub(below, self.sqr(below, a0), self.mul_non_residue(level, self.mul(below, a1, a2)))
        t1 = self.sub(below, self.mul_non_residue(level, self.sqr(below, a2)), self.mul(below, a0, a1))
        t2 = self.sub(below, self.sqr(below, a1), self.mul(below, a0, a2))
        det = self.add(
            below,
            self.mul(below, a0, t0),
            self.mul_non_residue(level, self.add(below, self.mul(below, a2, t1), self.mul(below, a1, t2))),
        )
        d_inv = self.inv(below, det)
        return tuple(self.mul(below, t, d_inv) for t in (t0, t1, t2))

    def pow(self, level: int, a: Raw, exponent: int) -> Raw:
        if exponent < 0:
            return self.pow(level, self.inv(level, a), -exponent)
        if level == 0:
            return pow(a, exponent, self.p)
        result = self._ones[level]
        base = a
        while exponent:
            if exponent & 1:
                result = self.mul(level, result, base)
            exponent >>= 1
            if exponent:
                base = self.sqr(level, base)
        return result

    # Subfields

    def embed(self, from_level: int, to_level: int, a: Raw) -> Raw:
        for i in range(from_level, to_level):
            a = (a,) + (self._zeros[i],) * (self.steps[i].arity - 1)
        return a

    def descend(self, from_level: int, to_level: int, a: Raw) -> Optional[Raw]:
        """Return the raw value at `to_level` if a lies in that subfield."""
        for i in range(from_level, to_level, -1):
            below = i - 1
            if any(c != self._zeros[below] for c in a[1:]):
                return None
            a = a[0]
        return a

    def scale(self, sub_level: int, level: int, s: Raw, a: Raw) -> Raw:
        """Multiply a level value by a subfield scalar coefficient-wise."""
        if sub_level == level:
            return self.mul(level, s, a)
        return tuple(self.scale(sub_level, level - 1, s, c) for c in a)

    def coefficient_count(self, level: int) -> int:
        return self.chain[level]

    def flatten(self, level: int, a: Raw) -> List[int]:
        if level == 0:
            return [a]
        out: List[int] = []
        for c in a:
            out.extend(self.flatten(level - 1, c))
        return out

    def unflatten(self, level: int, values: Sequence[int]) -> Raw:
        if len(values) != self.chain[level]:
            raise FieldMismatchError(
                f"Expected {self.chain[level]} coefficients for degree {self.chain[level]}, got {len(values)}"
            )
        if level == 0:
            return values[0] % self.p
        width = self.chain[level - 1]
        return tuple(
            self.unflatten(level - 1, values[j * width:(j + 1) * width])
            for j in range(self.steps[level - 1].arity)
        )

    def random_raw(self, level: int, rng: random.Random) -> Raw:
        return self.unflatten(level, [rng.randrange(self.p) for _ in range(self.chain[level])])

    # Frobenius

    def _precompute_frobenius(self) -> None:
        for level in range(1, len(self.chain)):
            gen = self.generator_raw(level)
            image = self.pow(level, gen, self.p)
            powers = [self._ones[level]]
            for _ in range(self.steps[level - 1].arity - 1):
                powers.append(self.mul(level, powers[-1], image))
            self._frob_powers[level] = powers

    def frobenius_raw(self, level: int, a: Raw) -> Raw:
        """a^p."""
        if level == 0:
            return a
        below = level - 1
        powers = self._frob_powers[level]
        result = self._zeros[level]
        for j, coeff in enumerate(a):
            image = self.frobenius_raw(below, coeff)
            if self.is_zero(below, image):
                continue
            if j == 0:
                term = self.embed(below, level, image)
            else:
                term = self.scale(below, level, image, powers[j])
            result = self.add(level, result, term)
        return result

    # Residuosity

    def power_residue_symbol_is_one(self, level: int, a: Raw, n: int) -> bool:
        """True if a is an n-th power in F_{p^d}, d = chain[level]."""
        order = self.p ** self.chain[level] - 1
        if order % n != 0:
            return True
        return self.pow(level, a, order // n) == self._ones[level]

    def is_square(self, level: int, a: Raw) -> bool:
        return self.is_zero(level, a) or self.power_residue_symbol_is_one(level, a, 2)

    def sqrt(self, level: int, a: Raw, rng: Optional[random.Random] = None) -> Optional[Raw]:
        """Tonelli-Shanks in F_{p^d}."""
        if self.is_zero(level, a):
            return a
        if level == 0:
            return self.field.sqrt(a)
        if not self.is_square(level, a):
            return None
        q = self.p ** self.chain[level]
        t, s = q - 1, 0
        while t % 2 == 0:
            t //= 2
            s += 1
        rng = rng or random.Random(q)
        while True:
            z = self.random_raw(level, rng)
            if not self.is_zero(level, z) and not self.is_square(level, z):
                break
        m = s
        c = self.pow(level, z, t)
        u = self.pow(level, a, t)
        root = self.pow(level, a, (t + 1) // 2)
        one = self._ones[level]
        while u != one:
            i, u2 = 0, u
            while u2 != one:
                u2 = self.sqr(level, u2)
                i += 1
            b = self.pow(level, c, 1 << (m - i - 1))
            m = i
            c = self.sqr(level, b)
            u = self.mul(level, u, c)
            root = self.mul(level, root, b)
        return root

    # Serialization

    def to_dict(self) -> Dict[str, Any]:
        return {
            "modulus": str(self.p),
            "chain": list(self.chain),
            "twist_degree": self.twist_degree,
            "steps": [
                {
                    "base_degree": step.base_degree,
                    "arity": step.arity,
                    "over_generator": step.over_generator,
                    "non_residue": (
                        [] if step.over_generator else [str(c) for c in self.flatten(i, step.non_residue)]
                    ),
                }
                for i, step in enumerate(self.steps)
            ],
            "theta": "top generator w with w^2 in F_p^(k/2) and w^delta = xi in F_p^e",
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], check_prime: bool = True) -> "TowerSpec":
        field = PrimeField(int(data["modulus"]), check_prime=check_prime)
        builder = _TowerBuilder(field)
        for entry in data["steps"]:
            level = len(builder.steps)
            over_generator = entry.get("over_generator", False)
            nr = None
            if not over_generator:
                values = [int(v) for v in entry["non_residue"]]
                nr = builder.partial().unflatten(level, values)
            builder.push(entry["arity"], nr, over_generator)
        tower = builder.finish(data.get("twist_degree", 1))
        tower.verify()
        return tower

    # Verification

    def verify(self) -> None:
        """
        Check every step's non-residue and the twist generator.

        Raises:
            ValueError: If a step is reducible or theta^delta leaves F_{p^e}
        """
        for i, step in enumerate(self.steps):
            if not step.over_generator and self.power_residue_symbol_is_one(i, step.non_residue, step.arity):
                raise ValueError(f"Step {i} non-residue is an {step.arity}-th power in F_p^{step.base_degree}")
        if self.twist_degree > 1 and self.steps:
            e = self.k // self.twist_degree
            top = len(self.chain) - 1
            theta_delta = self.pow(top, self.generator_raw(top), self.twist_degree)
            if self.descend(top, self.level(e), theta_delta) is None:
                raise ValueError(f"theta^{self.twist_degree} is not in F_p^{e}")
            theta_sq = self.sqr(top, self.generator_raw(top))
            if self.descend(top, top - 1, theta_sq) is None:
                raise ValueError("theta^2 is not in F_p^(k/2)")

    def __repr__(self) -> str:
        return f"TowerSpec(p={self.p}, chain={'->'.join(map(str, self.chain))})"


class _TowerBuilder:
    """Incrementally grows a tower so each step can use the levels below."""

    def __init__(self, field: PrimeField):
        self.field = field
        self.steps: List[ExtensionStep] = []

    def partial(self) -> TowerSpec:
        return TowerSpec(self.field, self.steps)

    def push(self, arity: int, non_residue: Raw, over_generator: bool = False) -> None:
        base = 1 if not self.steps else self.steps[-1].degree
        self.steps.append(ExtensionStep(base, arity, non_residue, over_generator))

    def finish(self, twist_degree: int) -> TowerSpec:
        return TowerSpec(self.field, self.steps, twist_degree)


def _base_candidates() -> Iterator[int]:
    yield -1
    n = 2
    while True:
        yield n
        yield -n
        n += 1


def build_tower(
    field: PrimeField,
    lower_chain: Sequence[int],
    twist_degree: int,
    accept_twist: Optional[Callable[[TowerSpec, Raw], bool]] = None,
    max_candidates: int = 512,
) -> TowerSpec:
    """
    Build the pairing tower for a twist of degree 4 or 6.

    The lower chain F_p < ... < F_{p^e} uses quadratic steps. On top of it,
    a sextic twist adds v^3 = xi and w^2 = v; a quartic twist adds
    v^2 = xi and w^2 = v. xi is searched as u + n (u the generator of
    F_{p^e}) and must make the top steps irreducible and satisfy
    `accept_twist` (used by curves to require r | #E'(F_{p^e})).

    Args:
        field: Base field
        lower_chain: Degrees 1, 2, ..., e (each step quadratic)
        twist_degree: 4 or 6
        accept_twist: Extra predicate on (tower over F_{p^e}, xi)
        max_candidates: Search bound per step

    Returns:
        Verified TowerSpec

    Raises:
        ValueError: If no suitable non-residue is found
    """
    if twist_degree not in (4, 6):
        raise ValueError(f"Unsupported twist degree {twist_degree}")
    builder = _TowerBuilder(field)
    for degree in lower_chain[1:]:
        level = len(builder.steps)
        partial = builder.partial()
        if degree != 2 * partial.chain[-1]:
            raise ValueError(f"Lower chain must be quadratic, got {lower_chain}")
        found = None
        for n, offset in zip(range(max_candidates), _base_candidates()):
            if level == 0:
                candidate = offset % field.p
            else:
                candidate = partial.add(level, partial.generator_raw(level), partial.from_int_raw(level, n))
            if not partial.is_zero(level, candidate) and not partial.is_square(level, candidate):
                found = candidate
                break
        if found is None:
            raise ValueError(f"No quadratic non-residue found in F_p^{partial.chain[-1]}")
        builder.push(2, found)

    base = builder.partial()
    e_level = len(base.chain) - 1
    for n in range(max_candidates):
        if e_level == 0:
            xi = (n + 2) % field.p
        else:
            xi = base.add(e_level, base.generator_raw(e_level), base.from_int_raw(e_level, n))
        if base.is_zero(e_level, xi) or base.is_square(e_level, xi):
            continue
        if twist_degree == 6 and base.power_residue_symbol_is_one(e_level, xi, 3):
            continue
        if accept_twist is not None and not accept_twist(base, xi):
            logger.debug(f"Twist non-residue candidate {n} rejected by predicate")
            continue
        trial = _TowerBuilder(field)
        trial.steps = list(builder.steps)
        trial.push(3 if twist_degree == 6 else 2, xi)
        trial.push(2, None, over_generator=True)
        tower = trial.finish(twist_degree)
        tower.verify()
        logger.info(f"Built tower {tower} with twist candidate {n}")
        return tower
    raise ValueError(f"No degree-{twist_degree} twist non-residue found in F_p^{base.chain[-1]}")
