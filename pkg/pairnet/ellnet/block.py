"""
Net blocks: the 8 + 3 window of net values centered at k.

    first  = W(k-3,0) W(k-2,0) W(k-1,0) W(k,0) W(k+1,0) W(k+2,0) W(k+3,0) W(k+4,0)
    second = W(k-1,1) W(k,1) W(k+1,1)
"""

import hashlib
from dataclasses import dataclass
from typing import Any, Dict, Tuple

from pairnet.fieldtower.element import FieldElement

FIRST_OFFSETS = tuple(range(-3, 5))
SECOND_OFFSETS = (-1, 0, 1)


def slot_name(offset: int, row: int) -> str:
    """Name of a block slot, e.g. "W(k-3,0)" or "W(k,1)"."""
    if offset == 0:
        return f"W(k,{row})"
    return f"W(k{offset:+d},{row})"


FIRST_SLOTS = tuple(slot_name(o, 0) for o in FIRST_OFFSETS)
SECOND_SLOTS = tuple(slot_name(o, 1) for o in SECOND_OFFSETS)


@dataclass(frozen=True)
class NetBlock:
    center: int
    first: Tuple[FieldElement, ...]
    second: Tuple[FieldElement, ...]

    def __post_init__(self):
        if len(self.first) != len(FIRST_OFFSETS) or len(self.second) != len(SECOND_OFFSETS):
            raise ValueError(f"Block at {self.center} has {len(self.first)}+{len(self.second)} values, expected 8+3")

    def w0(self, n: int) -> FieldElement:
        """W(n, 0) for n in [center-3, center+4]."""
        i = n - self.center + 3
        if not 0 <= i < len(self.first):
            raise IndexError(f"W({n},0) is outside the block centered at {self.center}")
        return self.first[i]

    def w1(self, n: int) -> FieldElement:
        """W(n, 1) for n in [center-1, center+1]."""
        i = n - self.center + 1
        if not 0 <= i < len(self.second):
            raise IndexError(f"W({n},1) is outside the block centered at {self.center}")
        return self.second[i]

    def slots(self) -> Dict[str, FieldElement]:
        values = dict(zip(FIRST_SLOTS, self.first))
        values.update(zip(SECOND_SLOTS, self.second))
        return values

    def indexed_values(self) -> Dict[Tuple[int, int], FieldElement]:
        """Values keyed by absolute net index (n, m)."""
        values = {(self.center + o, 0): v for o, v in zip(FIRST_OFFSETS, self.first)}
        values.update({(self.center + o, 1): v for o, v in zip(SECOND_OFFSETS, self.second)})
        return values

    def digest(self) -> str:
        h = hashlib.sha256(str(self.center).encode())
        for value in self.first + self.second:
            h.update(value.digest().encode())
        return h.hexdigest()[:16]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "center": str(self.center),
            "first": [v.to_json() for v in self.first],
            "second": [v.to_json() for v in self.second],
        }
