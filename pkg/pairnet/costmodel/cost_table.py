"""
Cost Expressions and Price Tables

Implements:
1. CostExpr: integer combinations of M_i, S_i, I_i, N_i
2. ReducedCost: a.M + b.I after pricing
3. CostTable: prices loaded from a JSON document, Frobenius prices,
   family extras and Miller-loop prices
4. Two reduction conventions: "published" (normalising multiplications
   N_i are dropped) and "full" (N_i priced as M_i)

Inversions stay symbolic: I_1 reduces to 1I and I_6 to 37M + I.
"""

import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Tuple

from pairnet.fieldtower.counter import OpCounter, OpKind

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / "data"
DEFAULT_TABLE_PATH = DATA_DIR / "cost_table.json"

PUBLISHED = "published"
FULL = "full"

_TERM = re.compile(r"([+-]?)(\d*)\s*(M|S|I|N)(?:_(\d+))?")

Key = Tuple[str, int]


class UnpricedCostError(KeyError):
    """A cost expression references an entry the table does not price."""

    def __init__(self, entry: str):
        self.entry = entry
        super().__init__(f"No price for {entry} in the cost table")

    def __str__(self) -> str:
        return self.args[0]


@dataclass(frozen=True)
class ReducedCost:
    """m base multiplications plus i base inversions."""
    m: int = 0
    i: int = 0

    def __add__(self, other: "ReducedCost") -> "ReducedCost":
        return ReducedCost(self.m + other.m, self.i + other.i)

    def __mul__(self, n: int) -> "ReducedCost":
        return ReducedCost(self.m * n, self.i * n)

    __rmul__ = __mul__

    def __str__(self) -> str:
        parts = []
        if self.m or not self.i:
            parts.append(f"{self.m}M")
        if self.i:
            parts.append("I" if self.i == 1 else f"{self.i}I")
        return "+".join(parts)

    @classmethod
    def parse(cls, text: str) -> "ReducedCost":
        """
        Parse "15071M+3I", "9247M" or "37M+I".

        Raises:
            ValueError: On anything but base M and I terms
        """
        expr = CostExpr.parse(text)
        if any(level != 1 for _, level in expr.terms):
            raise ValueError(f"'{text}' is not a reduced cost")
        return cls(expr.terms.get(("M", 1), 0), expr.terms.get(("I", 1), 0))


@dataclass
class CostExpr:
    """Multiset of (kind, level) -> count."""
    terms: Dict[Key, int] = field(default_factory=dict)

    @classmethod
    def of(cls, kind: str, level: int = 1, count: int = 1) -> "CostExpr":
        return cls({(kind, level): count}) if count else cls()

    @classmethod
    def parse(cls, text: str) -> "CostExpr":
        """
        Parse expressions like "19M_2+3S_2+M_12", "100M+I" or "2M_12".

        Raises:
            ValueError: On malformed input
        """
        source = text.replace(" ", "")
        expr = cls()
        pos = 0
        if not source:
            raise ValueError("Empty cost expression")
        while pos < len(source):
            match = _TERM.match(source, pos)
            if not match or match.end() == pos or (pos and not match.group(1)):
                raise ValueError(f"Malformed cost expression at '{source[pos:]}'")
            sign = -1 if match.group(1) == "-" else 1
            count = int(match.group(2)) if match.group(2) else 1
            level = int(match.group(4)) if match.group(4) else 1
            expr.add(match.group(3), level, sign * count)
            pos = match.end()
        return expr

    @classmethod
    def from_counter(cls, counter: OpCounter) -> "CostExpr":
        expr = cls()
        for (kind, level), count in counter.tallies.items():
            expr.add(kind.value, level, count)
        return expr

    def to_counter(self) -> OpCounter:
        counter = OpCounter()
        for (kind, level), count in self.terms.items():
            counter.record(OpKind(kind), level, count)
        return counter

    def add(self, kind: str, level: int, count: int) -> None:
        total = self.terms.get((kind, level), 0) + count
        if total:
            self.terms[(kind, level)] = total
        else:
            self.terms.pop((kind, level), None)

    def __add__(self, other: "CostExpr") -> "CostExpr":
        out = CostExpr(dict(self.terms))
        for (kind, level), count in other.terms.items():
            out.add(kind, level, count)
        return out

    def __mul__(self, n: int) -> "CostExpr":
        if n == 0:
            return CostExpr()
        return CostExpr({key: count * n for key, count in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CostExpr) and self.terms == other.terms

    def count(self, kind: str, level: int = 1) -> int:
        return self.terms.get((kind, level), 0)

    def reduce(self, table: "CostTable", convention: str = PUBLISHED) -> ReducedCost:
        """
        Price every term.

        Raises:
            UnpricedCostError: If the table lacks an entry
        """
        total = ReducedCost()
        for (kind, level), count in self.terms.items():
            total = total + table.price(kind, level, convention) * count
        return total

    def upper_bound(self, table: "CostTable") -> ReducedCost:
        """Published reduction with each unpriced S_i bounded by M_i."""
        total = ReducedCost()
        for (kind, level), count in self.terms.items():
            total = total + table.bound(kind, level) * count
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        order = {"M": 0, "S": 1, "N": 2, "I": 3}
        parts = []
        for (kind, level), count in sorted(self.terms.items(), key=lambda t: (t[0][1], order[t[0][0]])):
            name = kind if level == 1 else f"{kind}_{level}"
            coeff = "" if count == 1 else ("-" if count == -1 else str(count))
            parts.append(f"{coeff}{name}")
        return "+".join(parts).replace("+-", "-")


class CostTable:
    """
    Prices of extension-field operations in base M and I.

    Attributes:
        name: Table name from the document
        prices: (kind, level) -> ReducedCost
        frobenius: (k, power) -> ReducedCost
    """

    def __init__(self, document: Dict[str, Any]):
        self.name = document.get("name", "custom")
        self.document = document
        self.prices: Dict[Key, ReducedCost] = {}
        for entry, text in document.get("prices", {}).items():
            kind, level = _split_entry(entry)
            self.prices[(kind, level)] = ReducedCost.parse(text)
        self.frobenius: Dict[Tuple[int, int], ReducedCost] = {
            (int(k), int(power)): ReducedCost.parse(text)
            for k, powers in document.get("frobenius", {}).items()
            for power, text in powers.items()
        }

    @classmethod
    def load(cls, path: Optional[Path] = None) -> "CostTable":
        """
        Load a table document (the shipped one by default).

        Raises:
            FileNotFoundError: If the document does not exist
            ValueError: On malformed entries
        """
        path = Path(path) if path else DEFAULT_TABLE_PATH
        with open(path, "r") as f:
            table = cls(json.load(f))
        logger.info(f"Loaded cost table '{table.name}' from {path} ({len(table.prices)} prices)")
        return table

    def has(self, kind: str, level: int) -> bool:
        return (kind, level) in self.prices

    def price(self, kind: str, level: int, convention: str = PUBLISHED) -> ReducedCost:
        if kind == "N":
            if convention == PUBLISHED:
                return ReducedCost()
            kind = "M"
        try:
            return self.prices[(kind, level)]
        except KeyError:
            raise UnpricedCostError(f"{kind}_{level}") from None

    def bound(self, kind: str, level: int) -> ReducedCost:
        """Price, with an unpriced S_i bounded by M_i."""
        if kind == "S" and not self.has("S", level):
            return self.price("M", level)
        return self.price(kind, level)

    def frobenius_price(self, k: int, power: int) -> ReducedCost:
        try:
            return self.frobenius[(k, power)]
        except KeyError:
            raise UnpricedCostError(f"Frobenius p^{power} in F_p^{k}") from None

    def extras(self, family: str) -> Dict[str, CostExpr]:
        """Named family-specific line and correction costs."""
        return {name: CostExpr.parse(text)
                for name, text in self.document.get("pairing_extras", {}).get(family, {}).items()}

    def miller_prices(self, family: str) -> Dict[str, str]:
        try:
            return dict(self.document["miller"][family])
        except KeyError:
            raise UnpricedCostError(f"Miller loop prices for {family}") from None

    def entries(self) -> Iterable[str]:
        return (f"{kind}_{level}" for kind, level in sorted(self.prices, key=lambda k: (k[1], k[0])))


def _split_entry(entry: str) -> Key:
    kind, _, level = entry.partition("_")
    if kind not in ("M", "S", "I", "N") or not level.isdigit():
        raise ValueError(f"Malformed cost table entry '{entry}'")
    return kind, int(level)
