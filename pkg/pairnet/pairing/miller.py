"""
Miller Loop Oracle

Implements:
1. Chord, tangent and vertical line evaluations
2. f_{n,base}(at) by left-to-right double-and-add
3. The divisor relation f_{a+b} = f_a f_b l_{[a]Q,[b]Q} / v_{[a+b]Q}

Used as an independent reference for the net-based pairings; lines and
verticals are divided out exactly.
"""

import logging
from typing import Tuple

from pairnet.curves.point import Point
from pairnet.fieldtower.element import FieldElement
from pairnet.pairing.output import DegenerateLineError

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def _one(P: Point) -> FieldElement:
    return FieldElement.one(P.x.tower, P.x.degree)


def vertical_value(R: Point, P: Point) -> FieldElement:
    """v_R(P) = x_P - x_R, and 1 at infinity."""
    if R.is_infinity:
        return _one(P)
    return P.x - R.x


def line_value(T: Point, U: Point, P: Point) -> Tuple[FieldElement, Point]:
    """
    Line through T and U (tangent when equal) evaluated at P, and T + U.

    The line through T and -T is the vertical at T.
    """
    if T.is_infinity or U.is_infinity:
        return _one(P), T + U
    if T.x == U.x and (T.y != U.y or T.y.is_zero()):
        return P.x - T.x, T.curve.infinity()
    if T.x == U.x:
        slope = (3 * T.x.square() + T.curve.a) / (2 * T.y)
    else:
        slope = (U.y - T.y) / (U.x - T.x)
    value = P.y - T.y - slope * (P.x - T.x)
    x3 = slope.square() - T.x - U.x
    return value, Point(T.curve, x3, slope * (T.x - x3) - T.y)


def _divide(f: FieldElement, vertical: FieldElement, where: str) -> FieldElement:
    if vertical.is_zero():
        raise DegenerateLineError(where, f"Vertical line at {where} vanishes at the evaluation point")
    return f / vertical


def miller(n: int, base: Point, at: Point) -> FieldElement:
    """
    f_{n,base}(at), the function with divisor n(base) - ([n]base) - (n-1)(O).

    Raises:
        ValueError: If n < 1
        DegenerateLineError: If a line or vertical vanishes at `at`
    """
    if n < 1:
        raise ValueError(f"Miller loop length must be positive, got {n}")
    if base.is_infinity or at.is_infinity:
        raise DegenerateLineError("point", "Miller loop on the point at infinity")
    f = _one(at)
    T = base
    for bit in bin(n)[3:]:
        ell, T2 = line_value(T, T, at)
        f = _divide(f.square() * ell, vertical_value(T2, at), "2T")
        T = T2
        if bit == "1":
            ell, T2 = line_value(T, base, at)
            f = _divide(f * ell, vertical_value(T2, at), "T+base")
            T = T2
    if f.is_zero():
        raise DegenerateLineError("f", f"f_{n},base vanishes at the evaluation point")
    return f


def divisor_check(a: int, b: int, base: Point, at: Point) -> bool:
    """f_{a+b}(at) == f_a(at) f_b(at) l_{[a]base,[b]base}(at) / v_{[a+b]base}(at)."""
    ell, total = line_value(base * a, base * b, at)
    rhs = miller(a, base, at) * miller(b, base, at) * ell / vertical_value(total, at)
    return miller(a + b, base, at) == rhs
