"""
Rank-1 nets: division polynomials evaluated at a point, and multiples
[n]S = (x - psi_{n-1} psi_{n+1} / psi_n^2,
        (psi_{n-1}^2 psi_{n+2} - psi_{n+1}^2 psi_{n-2}) / (4 y psi_n^3)).
"""

import logging
from typing import Dict, List

from pairnet.curves.point import Point
from pairnet.ellnet.context import DegenerateNetError
from pairnet.fieldtower.element import FieldElement

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class Rank1Net:
    """psi_n(S) with memoised doubling recurrences."""

    def __init__(self, point: Point):
        if point.is_infinity:
            raise DegenerateNetError("point", "Rank-1 net of the point at infinity")
        if point.y.is_zero():
            raise DegenerateNetError("psi_2", "Rank-1 net of a 2-torsion point")
        self.point = point
        a, b = point.curve.a, point.curve.b
        x, y = point.x, point.y
        x_sq = x.square()
        x_cu = x_sq * x
        self._two_y_inv = (2 * y).inverse()
        self._cache: Dict[int, FieldElement] = {
            0: FieldElement.zero(x.tower, x.degree),
            1: FieldElement.one(x.tower, x.degree),
            2: 2 * y,
            3: 3 * x_sq.square() + 6 * a * x_sq + 12 * b * x - a.square(),
            4: 4 * y * (x_cu.square() + 5 * a * x_sq.square() + 20 * b * x_cu - 5 * a.square() * x_sq
                        - 4 * a * b * x - 8 * b.square() - a.square() * a),
        }

    def psi(self, n: int) -> FieldElement:
        if n < 0:
            return -self.psi(-n)
        cached = self._cache.get(n)
        if cached is not None:
            return cached
        m = n // 2
        if n % 2:
            value = (self.psi(m + 2) * self.psi(m).square() * self.psi(m)
                     - self.psi(m - 1) * self.psi(m + 1).square() * self.psi(m + 1))
        else:
            value = self.psi(m) * (self.psi(m + 2) * self.psi(m - 1).square()
                                   - self.psi(m - 2) * self.psi(m + 1).square()) * self._two_y_inv
        self._cache[n] = value
        return value

    def window(self, start: int, stop: int) -> List[FieldElement]:
        return [self.psi(n) for n in range(start, stop)]


def rank1_psi(point: Point, n: int) -> FieldElement:
    """psi_n evaluated at `point`."""
    return Rank1Net(point).psi(n)


def multiple_point(point: Point, n: int) -> Point:
    """
    [n]S from division polynomials.

    Returns the point at infinity when psi_n(S) = 0.

    Raises:
        ValueError: If n < 1
    """
    if n < 1:
        raise ValueError(f"Multiple index must be positive, got {n}")
    if point.is_infinity:
        return point
    if point.y.is_zero():
        return point if n % 2 else point.curve.infinity()
    net = Rank1Net(point)
    psi_n = net.psi(n)
    if psi_n.is_zero():
        logger.debug(f"psi_{n} vanishes: [{n}]S is the point at infinity")
        return point.curve.infinity()
    psi_n_inv = psi_n.inverse()
    psi_n_inv_sq = psi_n_inv.square()
    x = point.x - net.psi(n - 1) * net.psi(n + 1) * psi_n_inv_sq
    y = ((net.psi(n - 1).square() * net.psi(n + 2) - net.psi(n + 1).square() * net.psi(n - 2))
         * (4 * point.y).inverse() * psi_n_inv_sq * psi_n_inv)
    return Point(point.curve, x, y)
