"""
Operation Counting for Field Towers

Implements:
1. Per-level tallies of multiplications, squarings and inversions
2. Scoped counting (nested scopes merge into their parent)
3. Paused regions for precomputation
4. Counter merging for worker threads

Counting is tied to the current execution context, so every thread
opens its own scope and merges the result after it joins.
"""

import logging
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Tuple

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class OpKind(Enum):
    """Counted operation kinds."""
    MUL = "M"
    SQR = "S"
    INV = "I"
    # Multiplication by a precomputed normalising constant (W(2,0)^-1)
    NORM = "N"


@dataclass
class OpCounter:
    """Raw tallies keyed by (kind, level)."""
    tallies: Dict[Tuple[OpKind, int], int] = field(default_factory=dict)
    label: str = ""

    def record(self, kind: OpKind, level: int, count: int = 1) -> None:
        """Add `count` operations of `kind` at extension degree `level`."""
        if count < 0:
            raise ValueError(f"Negative tally for {kind.value}_{level}: {count}")
        if count == 0:
            return
        key = (kind, level)
        self.tallies[key] = self.tallies.get(key, 0) + count

    def get(self, kind: OpKind, level: int) -> int:
        return self.tallies.get((kind, level), 0)

    def merge(self, other: "OpCounter") -> None:
        """Fold another counter's tallies into this one."""
        for (kind, level), count in other.tallies.items():
            self.record(kind, level, count)

    def copy(self) -> "OpCounter":
        return OpCounter(tallies=dict(self.tallies), label=self.label)

    def levels(self) -> List[int]:
        return sorted({level for _, level in self.tallies})

    def is_empty(self) -> bool:
        return not self.tallies

    def diff(self, other: "OpCounter") -> Dict[str, int]:
        """
        Per-entry difference self - other.

        Returns:
            Mapping like {"M_2": 1, "S_4": -2}; equal entries are omitted
        """
        keys = set(self.tallies) | set(other.tallies)
        result = {}
        for kind, level in sorted(keys, key=lambda k: (k[1], k[0].value)):
            delta = self.get(kind, level) - other.get(kind, level)
            if delta:
                result[f"{kind.value}_{level}"] = delta
        return result

    def to_dict(self) -> Dict[str, int]:
        return {
            f"{kind.value}_{level}": count
            for (kind, level), count in sorted(
                self.tallies.items(), key=lambda item: (item[0][1], item[0][0].value)
            )
        }

    @classmethod
    def from_dict(cls, data: Dict[str, int], label: str = "") -> "OpCounter":
        counter = cls(label=label)
        for key, count in data.items():
            kind, level = key.split("_")
            counter.record(OpKind(kind), int(level), int(count))
        return counter

    def __str__(self) -> str:
        parts = [f"{count} {key}" for key, count in self.to_dict().items()]
        return " + ".join(parts) if parts else "0"


_active: ContextVar[Optional[OpCounter]] = ContextVar("pairnet_op_counter", default=None)


def current_counter() -> Optional[OpCounter]:
    """Counter of the innermost open scope, or None."""
    return _active.get()


def record(kind: OpKind, level: int, count: int = 1) -> None:
    """Tally into the active scope, if any."""
    counter = _active.get()
    if counter is not None:
        counter.record(kind, level, count)


@contextmanager
def counting(label: str = "") -> Iterator[OpCounter]:
    """
    Open a counting scope.

    The yielded counter holds only the operations performed inside the
    scope. On exit the tallies are merged into the enclosing scope.
    """
    parent = _active.get()
    counter = OpCounter(label=label)
    token = _active.set(counter)
    try:
        yield counter
    finally:
        _active.reset(token)
        if parent is not None:
            parent.merge(counter)
        logger.debug(f"Counting scope '{label}' closed: {counter}")


@contextmanager
def paused() -> Iterator[None]:
    """Suspend counting, e.g. for precomputation."""
    token = _active.set(None)
    try:
        yield
    finally:
        _active.reset(token)
