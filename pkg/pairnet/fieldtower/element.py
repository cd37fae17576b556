"""
Counted Field Elements

Implements:
1. Immutable elements of any level of a TowerSpec
2. Operator overloads with per-level tallies (M_i, S_i, I_i)
3. Subfield scalar products tallied as (d/i) M_i
4. Frobenius, conjugation, embedding and subfield descent
5. Stable digests and JSON coefficient lists
"""

import hashlib
import random
from typing import Any, List, Optional, Sequence, Union

from pairnet.fieldtower.counter import OpKind, paused, record
from pairnet.fieldtower.prime_field import FieldMismatchError, ZeroInversionError
from pairnet.fieldtower.tower import Raw, TowerSpec

Operand = Union["FieldElement", int]


class FieldElement:
    """An element of F_{p^degree} inside a tower."""

    __slots__ = ("tower", "degree", "level", "raw")

    def __init__(self, tower: TowerSpec, degree: int, raw: Raw):
        self.tower = tower
        self.degree = degree
        self.level = tower.level(degree)
        self.raw = raw

    # Construction

    @classmethod
    def zero(cls, tower: TowerSpec, degree: int) -> "FieldElement":
        return cls(tower, degree, tower.zero_raw(tower.level(degree)))

    @classmethod
    def one(cls, tower: TowerSpec, degree: int) -> "FieldElement":
        return cls(tower, degree, tower.one_raw(tower.level(degree)))

    @classmethod
    def from_int(cls, tower: TowerSpec, degree: int, value: int) -> "FieldElement":
        return cls(tower, degree, tower.from_int_raw(tower.level(degree), value))

    @classmethod
    def from_coeffs(cls, tower: TowerSpec, degree: int, coeffs: Sequence[int]) -> "FieldElement":
        return cls(tower, degree, tower.unflatten(tower.level(degree), [int(c) for c in coeffs]))

    @classmethod
    def generator(cls, tower: TowerSpec, degree: int) -> "FieldElement":
        return cls(tower, degree, tower.generator_raw(tower.level(degree)))

    @classmethod
    def sample(cls, tower: TowerSpec, degree: int, rng: random.Random) -> "FieldElement":
        return cls(tower, degree, tower.random_raw(tower.level(degree), rng))

    # Helpers

    def _same(self, raw: Raw) -> "FieldElement":
        return FieldElement(self.tower, self.degree, raw)

    def _lift(self, other: Operand) -> "FieldElement":
        if isinstance(other, int):
            return FieldElement.from_int(self.tower, self.degree, other)
        if not isinstance(other, FieldElement):
            raise TypeError(f"Unsupported operand type {type(other).__name__}")
        if other.tower is not self.tower:
            raise FieldMismatchError("Operands belong to different towers")
        return other

    def _align(self, other: "FieldElement"):
        """Embed the lower-degree operand (free)."""
        if other.degree == self.degree:
            return self, other
        if other.degree < self.degree:
            return self, other.embed(self.degree)
        return self.embed(other.degree), other

    # Additive structure (free)

    def __add__(self, other: Operand) -> "FieldElement":
        a, b = self._align(self._lift(other))
        return a._same(self.tower.add(a.level, a.raw, b.raw))

    __radd__ = __add__

    def __sub__(self, other: Operand) -> "FieldElement":
        a, b = self._align(self._lift(other))
        return a._same(self.tower.sub(a.level, a.raw, b.raw))

    def __rsub__(self, other: Operand) -> "FieldElement":
        return self._lift(other) - self

    def __neg__(self) -> "FieldElement":
        return self._same(self.tower.neg(self.level, self.raw))

    # Multiplicative structure (counted)

    def __mul__(self, other: Operand) -> "FieldElement":
        if isinstance(other, int):
            return self._same(self.tower.scale_int(self.level, self.raw, other))
        other = self._lift(other)
        if other.degree == self.degree:
            record(OpKind.MUL, self.degree)
            return self._same(self.tower.mul(self.level, self.raw, other.raw))
        small, big = (self, other) if self.degree < other.degree else (other, self)
        return big.scale_by(small)

    __rmul__ = __mul__

    def scale_by(self, scalar: "FieldElement", kind: OpKind = OpKind.MUL) -> "FieldElement":
        """
        Multiply by an element of a subfield.

        Tallied as (degree / scalar.degree) operations at the scalar's level.
        """
        if scalar.degree == self.degree:
            record(kind, self.degree)
            return self._same(self.tower.mul(self.level, self.raw, scalar.raw))
        if self.degree % scalar.degree != 0:
            raise FieldMismatchError(f"F_p^{scalar.degree} is not a subfield of F_p^{self.degree}")
        record(kind, scalar.degree, self.degree // scalar.degree)
        return self._same(self.tower.scale(scalar.level, self.level, scalar.raw, self.raw))

    def square(self) -> "FieldElement":
        record(OpKind.SQR, self.degree)
        return self._same(self.tower.sqr(self.level, self.raw))

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroInversionError(f"Inversion of zero in F_p^{self.degree}")
        record(OpKind.INV, self.degree)
        return self._same(self.tower.inv(self.level, self.raw))

    def __truediv__(self, other: Operand) -> "FieldElement":
        if isinstance(other, int):
            if other % self.tower.p == 0:
                raise ZeroInversionError("Division by zero integer")
            return self * self.tower.field.inv(other)
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other: Operand) -> "FieldElement":
        return self._lift(other) * self.inverse()

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if exponent == 0:
            return FieldElement.one(self.tower, self.degree)
        result: Optional[FieldElement] = None
        for bit in bin(exponent)[2:]:
            if result is not None:
                result = result.square()
            if bit == "1":
                result = self if result is None else result * self
        return result

    def uncounted_pow(self, exponent: int) -> "FieldElement":
        return self._same(self.tower.pow(self.level, self.raw, exponent))

    # Frobenius and subfields

    def frobenius(self, power: int = 1) -> "FieldElement":
        """a^(p^power); uncounted (priced separately in the cost table)."""
        if power < 0:
            raise ValueError(f"Frobenius power must be non-negative, got {power}")
        raw = self.raw
        with paused():
            for _ in range(power % self.degree):
                raw = self.tower.frobenius_raw(self.level, raw)
        return self._same(raw)

    def conjugate(self) -> "FieldElement":
        """Frobenius p^(degree/2); equals the inverse on norm-one elements."""
        if self.degree % 2:
            raise FieldMismatchError(f"F_p^{self.degree} has no quadratic subfield conjugation")
        if self.level > 0 and self.tower.steps[self.level - 1].arity == 2:
            c0, c1 = self.raw
            below = self.level - 1
            return self._same((c0, self.tower.neg(below, c1)))
        return self.frobenius(self.degree // 2)

    def embed(self, degree: int) -> "FieldElement":
        if degree == self.degree:
            return self
        if degree < self.degree:
            raise FieldMismatchError(f"Cannot embed F_p^{self.degree} into F_p^{degree}")
        target = self.tower.level(degree)
        return FieldElement(self.tower, degree, self.tower.embed(self.level, target, self.raw))

    def descend(self, degree: int) -> Optional["FieldElement"]:
        """This element as a member of F_p^degree, or None if it is not in that subfield."""
        if degree == self.degree:
            return self
        target = self.tower.level(degree)
        if target > self.level:
            raise FieldMismatchError(f"F_p^{degree} is not a subfield of F_p^{self.degree}")
        raw = self.tower.descend(self.level, target, self.raw)
        return None if raw is None else FieldElement(self.tower, degree, raw)

    def in_subfield(self, degree: int) -> bool:
        return self.descend(degree) is not None

    def minimal_degree(self) -> int:
        for degree in self.tower.chain:
            if degree <= self.degree and self.in_subfield(degree):
                return degree
        return self.degree

    # Predicates and conversions

    def is_zero(self) -> bool:
        return self.tower.is_zero(self.level, self.raw)

    def is_one(self) -> bool:
        return self.raw == self.tower.one_raw(self.level)

    def is_square(self) -> bool:
        with paused():
            return self.tower.is_square(self.level, self.raw)

    def sqrt(self, rng: Optional[random.Random] = None) -> Optional["FieldElement"]:
        with paused():
            raw = self.tower.sqrt(self.level, self.raw, rng)
        return None if raw is None else self._same(raw)

    def coeffs(self) -> List[int]:
        return self.tower.flatten(self.level, self.raw)

    def to_json(self) -> List[str]:
        return [str(c) for c in self.coeffs()]

    def digest(self) -> str:
        data = ",".join(str(c) for c in self.coeffs()).encode()
        return hashlib.sha256(data).hexdigest()[:16]

    def __int__(self) -> int:
        value = self.descend(1)
        if value is None:
            raise ValueError(f"Element of F_p^{self.degree} is not in F_p")
        return value.raw

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, int):
            other = FieldElement.from_int(self.tower, self.degree, other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.tower is not self.tower:
            return False
        a, b = self._align(other)
        return a.raw == b.raw

    def __ne__(self, other: Any) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self) -> int:
        return hash((self.tower.p, self.minimal_degree(), tuple(self.descend(self.minimal_degree()).coeffs())))

    def __repr__(self) -> str:
        coeffs = self.coeffs()
        if self.degree == 1:
            return f"Fp({coeffs[0]})"
        shown = ", ".join(str(c) for c in coeffs[:4])
        tail = ", ..." if len(coeffs) > 4 else ""
        return f"F_p^{self.degree}[{shown}{tail}]"
