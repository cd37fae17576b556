"""
Pairing Results and Line Intermediates

Implements:
1. PairingOutput (raw value, reduced value, family, loop scalar, tallies)
2. BN line intermediates S, T, S^, T^, Z, U, V
3. KSS16 line intermediates A, B
4. DegenerateLineError carrying the offending intermediate
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

from pairnet.curves.point import Point, WeierstrassCurve
from pairnet.fieldtower.counter import OpCounter, paused
from pairnet.fieldtower.element import FieldElement


class DegenerateLineError(ValueError):
    """A line evaluation hit coincident points or a vanishing denominator."""

    def __init__(self, intermediate: str, message: str = ""):
        self.intermediate = intermediate
        super().__init__(message or f"Degenerate line: {intermediate} is zero")


@dataclass
class PairingOutput:
    """
    Attributes:
        raw: Value before the final exponentiation (top field)
        reduced: raw^((p^k - 1)/r), when computed
        family: Curve family tag
        loop_scalar: Signed loop scalar (r for the Tate pairing)
        method: "net" or "miller"
        counter: Operations recorded while computing `raw`
        steps: (doublings, additions) of the net or Miller walk
    """
    raw: FieldElement
    family: str
    loop_scalar: int
    method: str = "net"
    reduced: Optional[FieldElement] = None
    counter: Optional[OpCounter] = None
    steps: Tuple[int, int] = (0, 0)

    def is_root_of_unity(self, r: int) -> bool:
        if self.reduced is None:
            raise ValueError("Pairing output has not been reduced")
        with paused():
            return self.reduced.uncounted_pow(r).is_one()

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "family": self.family,
            "method": self.method,
            "loop_scalar": str(self.loop_scalar),
            "doublings": self.steps[0],
            "additions": self.steps[1],
            "raw": self.raw.to_json(),
        }
        if self.reduced is not None:
            data["reduced"] = self.reduced.to_json()
            data["reduced_digest"] = self.reduced.digest()
        if self.counter is not None:
            data["counts"] = self.counter.to_dict()
        return data


@dataclass(frozen=True)
class BNLineIntermediates:
    """[m]Q~ = (S/W^2, T/W^3), [p]Q~ = (S^/W^2, T^/W^3), [m+p]Q~ = (U/Z^2, V/Z^3)."""
    w: FieldElement
    s: FieldElement
    t: FieldElement
    s_hat: FieldElement
    t_hat: FieldElement
    z: FieldElement
    u: FieldElement
    v: FieldElement

    def loop_point(self, twist: WeierstrassCurve) -> Point:
        with paused():
            w_inv = self.w.inverse()
            return Point(twist, self.s * w_inv.square(), self.t * w_inv.square() * w_inv)

    def sum_point(self, twist: WeierstrassCurve) -> Point:
        with paused():
            z_inv = self.z.inverse()
            return Point(twist, self.u * z_inv.square(), self.v * z_inv.square() * z_inv)


@dataclass(frozen=True)
class KSSLineIntermediates:
    """[x]Q~ = (A/W^2, B/W^3)."""
    w: FieldElement
    a: FieldElement
    b: FieldElement

    def loop_point(self, twist: WeierstrassCurve) -> Point:
        with paused():
            w_inv = self.w.inverse()
            return Point(twist, self.a * w_inv.square(), self.b * w_inv.square() * w_inv)
