"""
Net Recurrence Oracles

Implements:
1. The four-term net relation
       W(p+q+s)W(p-q)W(r+s)W(r) + W(q+r+s)W(q-r)W(p+s)W(p)
     + W(r+p+s)W(r-p)W(q+s)W(q) = 0
   checked on sampled index tuples against any value provider
2. Naive forward recursion of the rows m = -1, 0, 1
3. Value providers built from computed blocks (antisymmetric closure)
4. Curve reconstruction from a normalised net and its invariants
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from pairnet.curves.point import WeierstrassCurve
from pairnet.ellnet.block import NetBlock
from pairnet.ellnet.context import DegenerateNetError, NetContext, modified_value, swapped_values
from pairnet.fieldtower.counter import paused
from pairnet.fieldtower.element import FieldElement

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

Index = Tuple[int, int]
IndexTuple = Tuple[Index, Index, Index, Index]
NetValues = Callable[[int, int], Optional[FieldElement]]


def _add(*vs: Index) -> Index:
    return sum(v[0] for v in vs), sum(v[1] for v in vs)


def _sub(u: Index, v: Index) -> Index:
    return u[0] - v[0], u[1] - v[1]


def relation_terms(p: Index, q: Index, r: Index, s: Index) -> List[Tuple[Index, Index, Index, Index]]:
    """The three index quadruples of the relation."""
    return [
        (_add(p, q, s), _sub(p, q), _add(r, s), r),
        (_add(q, r, s), _sub(q, r), _add(p, s), p),
        (_add(r, p, s), _sub(r, p), _add(q, s), q),
    ]


@dataclass
class RecurrenceReport:
    checked: int = 0
    skipped: int = 0
    failures: List[IndexTuple] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.checked > 0 and not self.failures


def check_recurrence(values: NetValues, tuples: Iterable[IndexTuple]) -> RecurrenceReport:
    """
    Evaluate the relation on each tuple; tuples touching unknown values are skipped.
    """
    report = RecurrenceReport()
    with paused():
        for p, q, r, s in tuples:
            total = None
            missing = False
            for quad in relation_terms(p, q, r, s):
                factors = [values(*idx) for idx in quad]
                if any(f is None for f in factors):
                    missing = True
                    break
                term = factors[0] * factors[1] * factors[2] * factors[3]
                total = term if total is None else total + term
            if missing:
                report.skipped += 1
                continue
            report.checked += 1
            if not total.is_zero():
                report.failures.append((p, q, r, s))
    if report.failures:
        logger.error(f"Net relation fails on {len(report.failures)} of {report.checked} tuples")
    return report


def sample_index_tuples(rng: random.Random, count: int, bound: int, rank: int = 2) -> List[IndexTuple]:
    """
    Random (p, q, r, s) whose derived indices stay in rows -1, 0, 1 and |n| <= bound.

    For rank 2 exactly one of p, q, r sits in row 1 and s in row 0 or -1;
    for rank 1 everything sits in row 0.
    """
    span = max(bound // 3, 1)
    tuples: List[IndexTuple] = []
    for _ in range(count):
        firsts = [rng.randint(-span, span) for _ in range(4)]
        rows = [0, 0, 0, 0]
        if rank == 2:
            rows[rng.randrange(3)] = 1
            rows[3] = rng.choice((0, -1))
        p, q, r, s = ((firsts[i], rows[i]) for i in range(4))
        tuples.append((p, q, r, s))
    return tuples


class NaiveNet:
    """
    Rows m = -1, 0, 1 of a net by forward recursion from its initial values.

    Row 0:  W(k+2,0) W(k-2,0) = W(k+1,0) W(k-1,0) W(2,0)^2 - W(3,0) W(k,0)^2
    Row 1:  W(k+2,1) W(k-2,1) = W(k+1,1) W(k-1,1) W(2,0)^2 - W(3,0) W(k,1)^2
    Row -1: W(a,-1) = -W(-a,1)

    Values follow the context's convention (modified or not).
    """

    def __init__(self, ctx: NetContext, bound: int):
        if bound < 5:
            raise ValueError(f"Naive net bound must be at least 5, got {bound}")
        self.ctx = ctx
        self.bound = bound
        with paused():
            self._row0 = self._build_row0()
            self._row1 = self._build_row1()

    def _build_row0(self) -> Dict[int, FieldElement]:
        ctx = self.ctx
        w2_sq = ctx.w2.square()
        row = {0: FieldElement.zero(ctx.w2.tower, ctx.row0_degree), 1: FieldElement.one(ctx.w2.tower, ctx.row0_degree),
               2: ctx.w2, 3: ctx.w3, 4: ctx.w4}
        for k in range(3, self.bound - 1):
            den = row[k - 2]
            if den.is_zero():
                raise DegenerateNetError(f"W({k - 2},0)")
            row[k + 2] = (row[k + 1] * row[k - 1] * w2_sq - ctx.w3 * row[k].square()) / den
        for n in list(row):
            row[-n] = -row[n]
        return row

    def _build_row1(self) -> Dict[int, FieldElement]:
        ctx = self.ctx
        w2_sq = ctx.w2.square()
        one = FieldElement.one(ctx.w21.tower, ctx.row1_degree)
        row = {-1: ctx.wm11, 0: one, 1: one, 2: ctx.w21}
        for k in range(1, self.bound - 1):
            den = row[k - 2]
            if den.is_zero():
                raise DegenerateNetError(f"W({k - 2},1)")
            row[k + 2] = (row[k + 1] * row[k - 1] * w2_sq - ctx.w3 * row[k].square()) / den
        for k in range(0, -self.bound + 1, -1):
            num = row[k + 1] * row[k - 1] * w2_sq - ctx.w3 * row[k].square()
            den = row[k + 2]
            if den.is_zero():
                raise DegenerateNetError(f"W({k + 2},1)")
            row[k - 2] = num / den
        return row

    def value(self, a: int, b: int) -> Optional[FieldElement]:
        if abs(a) > self.bound:
            return None
        if b == 0:
            plain = self._row0[a]
        elif b == 1:
            plain = self._row1[a]
        elif b == -1:
            plain = -self._row1[-a]
        else:
            return None
        return modified_value(self.ctx, a, b, plain)

    __call__ = value


def block_values(blocks: Sequence[NetBlock]) -> NetValues:
    """Provider over the values stored in `blocks`, closed under W(-v) = -W(v)."""
    table: Dict[Index, FieldElement] = {}
    for block in blocks:
        for (a, b), v in block.indexed_values().items():
            table[(a, b)] = v
            table[(-a, -b)] = -v

    def lookup(a: int, b: int) -> Optional[FieldElement]:
        return table.get((a, b))

    return lookup


@dataclass(frozen=True)
class ReconstructedCurve:
    """Y^2 + a1 XY + a3 Y = X^3 + a2 X^2 + a4 X + a6 recovered from a net."""
    a1: FieldElement
    a2: FieldElement
    a3: FieldElement
    a4: FieldElement
    a6: FieldElement

    def c4(self) -> FieldElement:
        b2 = self.a1.square() + 4 * self.a2
        b4 = 2 * self.a4 + self.a1 * self.a3
        return b2.square() - 24 * b4

    def discriminant(self) -> FieldElement:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1.square() + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3.square() + 4 * a6
        b8 = a1.square() * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3.square() - a4.square()
        return -b2.square() * b8 - 8 * b4.square() * b4 - 27 * b6.square() + 9 * b2 * b4 * b6

    def contains(self, x: FieldElement, y: FieldElement) -> bool:
        lhs = y.square() + self.a1 * x * y + self.a3 * y
        return lhs == x.square() * x + self.a2 * x.square() + self.a4 * x + self.a6

    def matches(self, curve: WeierstrassCurve) -> bool:
        """Same c4 and discriminant as y^2 = x^3 + Ax + B (a translation of it)."""
        return self.c4() == -48 * curve.a and self.discriminant() == -16 * (4 * curve.a.square() * curve.a
                                                                                + 27 * curve.b.square())


def reconstruct_curve(w20: FieldElement, w02: FieldElement, w21: FieldElement,
                      w12: FieldElement) -> ReconstructedCurve:
    """
    Curve of a normalised net from W(2,0), W(0,2), W(2,1), W(1,2).

    The net's points become (0, 0) and (W(1,2) - W(2,1), 0).

    Raises:
        DegenerateNetError: If W(2,1) = W(1,2)
    """
    gap = w21 - w12
    if gap.is_zero():
        raise DegenerateNetError("W(2,1) - W(1,2)")
    with paused():
        return ReconstructedCurve(
            a1=(w20 - w02) / gap,
            a2=2 * w21 - w12,
            a3=w20.embed(gap.degree),
            a4=gap * w21,
            a6=FieldElement.zero(gap.tower, gap.degree),
        )


def reconstruct_from_context(ctx: NetContext) -> ReconstructedCurve:
    """Reconstruct from an unmodified context's early values."""
    w02, w12 = swapped_values(ctx)
    return reconstruct_curve(ctx.w2, w02, ctx.w21, w12)
