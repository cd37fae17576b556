"""
Short Weierstrass Curves and Affine Points

Implements:
1. Curves y^2 = x^3 + Ax + B over any level of a tower
2. Chord-and-tangent group law
3. Scalar multiplication (double-and-add)
4. Random point sampling
"""

import logging
import random
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from pairnet.fieldtower.element import FieldElement
from pairnet.fieldtower.tower import TowerSpec

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class PointNotOnCurveError(ValueError):
    """Coordinates do not satisfy the curve equation."""


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 = x^3 + a x + b over F_{p^degree}."""
    a: FieldElement
    b: FieldElement
    name: str = "E"

    def __post_init__(self):
        if self.a.degree != self.b.degree:
            raise ValueError(f"Curve coefficients at different degrees: {self.a.degree}, {self.b.degree}")
        disc = 4 * self.a.uncounted_pow(3) + 27 * self.b.uncounted_pow(2)
        if disc.is_zero():
            raise ValueError(f"Curve {self.name} is singular")

    @property
    def tower(self) -> TowerSpec:
        return self.a.tower

    @property
    def degree(self) -> int:
        return self.a.degree

    def rhs(self, x: FieldElement) -> FieldElement:
        return x.square() * x + self.a * x + self.b

    def contains(self, x: FieldElement, y: FieldElement) -> bool:
        return y.square() == self.rhs(x)

    def point(self, x: FieldElement, y: FieldElement) -> "Point":
        """
        Build an affine point, checking the equation.

        Raises:
            PointNotOnCurveError: If (x, y) is not on the curve
        """
        x, y = x.embed(max(x.degree, self.degree)), y.embed(max(y.degree, self.degree))
        if x.degree != self.degree or y.degree != self.degree:
            raise PointNotOnCurveError(f"Coordinates of degree {x.degree} do not fit curve {self.name}")
        if not self.contains(x, y):
            raise PointNotOnCurveError(f"Point ({x}, {y}) is not on {self.name}")
        return Point(self, x, y)

    def infinity(self) -> "Point":
        return Point(self, None, None)

    def extend(self, degree: int, name: Optional[str] = None) -> "WeierstrassCurve":
        """The same curve over F_{p^degree}."""
        return WeierstrassCurve(self.a.embed(degree), self.b.embed(degree), name or f"{self.name}/F_p^{degree}")

    def random_point(self, rng: random.Random) -> "Point":
        while True:
            x = FieldElement.sample(self.tower, self.degree, rng)
            y = self.rhs(x).sqrt(rng)
            if y is None:
                continue
            if rng.getrandbits(1):
                y = -y
            return Point(self, x, y)

    def to_dict(self) -> Dict[str, Any]:
        return {"degree": self.degree, "a": self.a.to_json(), "b": self.b.to_json()}

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, WeierstrassCurve) and self.a == other.a and self.b == other.b
                and self.degree == other.degree)

    def __hash__(self) -> int:
        return hash((self.degree, tuple(self.a.coeffs()), tuple(self.b.coeffs())))


class Point:
    """Affine point, or the point at infinity when x is None."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: WeierstrassCurve, x: Optional[FieldElement], y: Optional[FieldElement]):
        self.curve = curve
        self.x = x
        self.y = y

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def on_curve(self) -> bool:
        return self.is_infinity or self.curve.contains(self.x, self.y)

    def __neg__(self) -> "Point":
        if self.is_infinity:
            return self
        return Point(self.curve, self.x, -self.y)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        if self.is_infinity:
            return hash("infinity")
        return hash((tuple(self.x.coeffs()), tuple(self.y.coeffs())))

    def double(self) -> "Point":
        if self.is_infinity or self.y.is_zero():
            return self.curve.infinity()
        slope = (3 * self.x.square() + self.curve.a) / (2 * self.y)
        x3 = slope.square() - 2 * self.x
        y3 = slope * (self.x - x3) - self.y
        return Point(self.curve, x3, y3)

    def __add__(self, other: "Point") -> "Point":
        if self.is_infinity:
            return other
        if other.is_infinity:
            return self
        if self.x == other.x:
            if self.y == other.y:
                return self.double()
            return self.curve.infinity()
        slope = (other.y - self.y) / (other.x - self.x)
        x3 = slope.square() - self.x - other.x
        y3 = slope * (self.x - x3) - self.y
        return Point(self.curve, x3, y3)

    def __sub__(self, other: "Point") -> "Point":
        return self + (-other)

    def __mul__(self, n: int) -> "Point":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (-self) * (-n)
        result = self.curve.infinity()
        for bit in bin(n)[2:]:
            result = result.double()
            if bit == "1":
                result = result + self
        return result

    __rmul__ = __mul__

    def to_json(self) -> Optional[Dict[str, List[str]]]:
        if self.is_infinity:
            return None
        return {"x": self.x.to_json(), "y": self.y.to_json()}

    def __repr__(self) -> str:
        if self.is_infinity:
            return f"Point({self.curve.name}: infinity)"
        return f"Point({self.curve.name}: {self.x}, {self.y})"


def point_add(a: Point, b: Point) -> Point:
    return a + b


def point_mul(n: int, a: Point) -> Point:
    return a * n
