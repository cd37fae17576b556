"""
Elliptic Net Contexts

Implements:
1. Initial values W(2,0), W(3,0), W(4,0), W(5,0), W(2,1), W(-1,1), W(2,-1)
   of the rank-2 net attached to a curve and a point pair
2. Inverses of the constant denominators, computed once
3. Modified nets W'(u,v) = c^(uv) W(u,v) with c = W(-1,1)
4. Subfield membership checks for the T-relation scalars

The first point drives the W(n,0) row and lives on the curve's own field;
the second point may live on an extension (degree k), which is where the
W(n,1) row is computed.
"""

import dataclasses
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from pairnet.curves.point import Point, WeierstrassCurve
from pairnet.fieldtower.counter import paused
from pairnet.fieldtower.element import FieldElement

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class DegenerateNetError(ValueError):
    """The point pair does not define a non-degenerate net."""

    def __init__(self, quantity: str, message: str = ""):
        self.quantity = quantity
        super().__init__(message or f"Degenerate elliptic net: {quantity} is zero")


@dataclass(frozen=True)
class NetContext:
    """
    Immutable constants of one rank-2 net.

    Attributes:
        curve: Curve of the first point (coefficients at the row-0 degree)
        first: Point indexing the first coordinate of W(n, m)
        second: Point indexing the second coordinate
        w2, w3, w4, w5: W(2,0) .. W(5,0)
        w21: W(2,1) of the unmodified net
        wm11: W(-1,1) = x1 - x2 of the unmodified net
        w2m1: W(2,-1) of the unmodified net
        w2_inv: W(2,0)^-1, used by the even L relations
        modified: Whether block values follow W'(u,v) = c^(uv) W(u,v)
        factor: c = W(-1,1) when modified, otherwise 1
        t1_scale: Multiplier of T1 (None means 1)
        t3_scale: Multiplier of T3 (None means 1)
        t4_scale: Multiplier of T4
        half_degree: Whether c^-1 descended to the half-degree subfield
    """
    curve: WeierstrassCurve
    first: Point
    second: Point
    w2: FieldElement
    w3: FieldElement
    w4: FieldElement
    w5: FieldElement
    w21: FieldElement
    wm11: FieldElement
    w2m1: FieldElement
    w2_inv: FieldElement
    modified: bool
    factor: FieldElement
    t1_scale: Optional[FieldElement]
    t3_scale: Optional[FieldElement]
    t4_scale: FieldElement
    half_degree: bool

    @property
    def row0_degree(self) -> int:
        return self.w2.degree

    @property
    def row1_degree(self) -> int:
        return self.w21.degree

    @property
    def initial_first_row(self) -> Tuple[FieldElement, ...]:
        """W(-2,0) .. W(5,0)."""
        d = self.row0_degree
        zero = FieldElement.zero(self.w2.tower, d)
        one = FieldElement.one(self.w2.tower, d)
        return (-self.w2, -one, zero, one, self.w2, self.w3, self.w4, self.w5)

    @property
    def initial_second_row(self) -> Tuple[FieldElement, ...]:
        """W(0,1), W(1,1), W(2,1) of the (possibly modified) net."""
        one = FieldElement.one(self.w21.tower, self.row1_degree)
        if not self.modified:
            return (one, one, self.w21)
        with paused():
            c = self.factor
            return (one, c, c.square() * self.w21)

    def describe(self) -> str:
        mode = "modified" if self.modified else "plain"
        return f"{mode} net over F_p^{self.row0_degree} x F_p^{self.row1_degree}"


def _reject_zero(value: FieldElement, quantity: str) -> FieldElement:
    if value.is_zero():
        logger.error(f"Inadmissible point pair: {quantity} vanishes")
        raise DegenerateNetError(quantity)
    return value


def _half_degree_inverse(value: FieldElement, quantity: str) -> Tuple[FieldElement, bool]:
    """value^-1, descended to F_{p^(d/2)} when it lies there."""
    inv = value.inverse()
    d = value.degree
    if d % 2 == 0:
        low = inv.descend(d // 2)
        if low is not None:
            return low, True
    if d > 1:
        logger.warning(f"{quantity} is not in F_p^{d // 2}; its products are priced at F_p^{d}")
    return inv, False


def build_context(first: Point, second: Point, modified: bool = False) -> NetContext:
    """
    Precompute the constants of the net W_{first, second}.

    Args:
        first: Point of the first index; its curve fixes the row-0 field
        second: Point of the second index, over the same or a larger field
        modified: Build the modified net directly

    Returns:
        NetContext

    Raises:
        DegenerateNetError: If a point is infinity, x1 = x2, or a constant vanishes
    """
    if first.is_infinity or second.is_infinity:
        raise DegenerateNetError("point", "Net points must be affine")
    curve = first.curve
    if second.curve.a != curve.a or second.curve.b != curve.b:
        raise DegenerateNetError("curve", "Net points lie on different curves")
    with paused():
        ctx = _plain_context(curve, first, second)
    logger.debug(f"Built {ctx.describe()}")
    return to_modified(ctx) if modified else ctx


def _plain_context(curve: WeierstrassCurve, first: Point, second: Point) -> NetContext:
    a, b = curve.a, curve.b
    x1, y1 = first.x, first.y
    x2, y2 = second.x, second.y
    if x1 == x2:
        raise DegenerateNetError("x1 - x2", "Net points share an x-coordinate (P = +-Q)")

    x1_sq = x1.square()
    w2 = _reject_zero(2 * y1, "W(2,0)")
    w3 = _reject_zero(3 * x1_sq.square() + 6 * a * x1_sq + 12 * b * x1 - a.square(), "W(3,0)")
    x1_cu = x1_sq * x1
    inner = (x1_cu.square() + 5 * a * x1_sq.square() + 20 * b * x1_cu - 5 * a.square() * x1_sq
             - 4 * a * b * x1 - 8 * b.square() - a.square() * a)
    w4 = _reject_zero(4 * y1 * inner, "W(4,0)")
    w5 = w4 * w2.square() * w2 - w3.square() * w3

    diff = x1 - x2
    slope = (y2 - y1) / (x2 - x1)
    w21 = _reject_zero(2 * x1 + x2 - slope.square(), "W(2,1)")
    w2m1 = _reject_zero((y1 + y2).square() - (2 * x1 + x2) * diff.square(), "W(2,-1)")
    t3_scale, half = _half_degree_inverse(diff, "W(-1,1)^-1")

    return NetContext(
        curve=curve,
        first=first,
        second=second,
        w2=w2,
        w3=w3,
        w4=w4,
        w5=w5,
        w21=w21,
        wm11=diff,
        w2m1=w2m1,
        w2_inv=w2.inverse(),
        modified=False,
        factor=FieldElement.one(w21.tower, w21.degree),
        t1_scale=None,
        t3_scale=t3_scale,
        t4_scale=w2m1.inverse(),
        half_degree=half,
    )


def to_modified(ctx: NetContext) -> NetContext:
    """
    Switch to W'(u,v) = W(-1,1)^(uv) W(u,v).

    W'(-1,1) = 1, W'(1,1) = c and W'(2,-1) = c^-2 W(2,-1), so T1 takes the
    c^-1 scalar, T3 is undivided and T4 is scaled by c^2 / W(2,-1).

    Raises:
        DegenerateNetError: If W(-1,1) is zero
    """
    if ctx.modified:
        return ctx
    with paused():
        c = _reject_zero(ctx.wm11, "W(-1,1)")
        c_inv, half = _half_degree_inverse(c, "W'(1,1)^-1")
        t4 = c.square() * ctx.t4_scale
    return dataclasses.replace(
        ctx,
        modified=True,
        factor=c,
        t1_scale=c_inv,
        t3_scale=None,
        t4_scale=t4,
        half_degree=half,
    )


def modified_value(ctx: NetContext, a: int, b: int, plain: FieldElement) -> FieldElement:
    """Rescale an unmodified net value W(a,b) to the context's convention."""
    if not ctx.modified or a * b == 0:
        return plain
    with paused():
        return plain * (ctx.factor ** (a * b))


def swapped_values(ctx: NetContext) -> Tuple[FieldElement, FieldElement]:
    """(W(0,2), W(1,2)) of the unmodified net, read off W_{Q,P}(2,0) and W_{Q,P}(2,1)."""
    with paused():
        x1, x2, y2 = ctx.first.x, ctx.second.x, ctx.second.y
        slope = (y2 - ctx.first.y) / (x2 - x1)
        return 2 * y2, 2 * x2 + x1 - slope.square()
