"""
Signed 2-power seed expressions.

Seeds such as 2^114+2^101-2^14-1 are kept as signed sums of powers of two
so the doubling/addition counts of a loop driven by them can be read off
the expression: the top exponent gives the doublings and every further
term one addition. Plain integers are expanded in non-adjacent form.
"""

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+)\s*\*\s*)?(?:2\s*\^\s*(\d+)|(\d+))\s*")


@dataclass(frozen=True)
class SignedTerm:
    sign: int
    exponent: int

    @property
    def value(self) -> int:
        return self.sign << self.exponent


@dataclass(frozen=True)
class SignedExpansion:
    """Signed sum of distinct powers of two, highest exponent first."""
    terms: Tuple[SignedTerm, ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, int]]) -> "SignedExpansion":
        """Normalise (coefficient, exponent) pairs: merge equal exponents and carry."""
        buckets: Dict[int, int] = {}
        for coeff, exponent in pairs:
            if exponent < 0:
                raise ValueError(f"Negative exponent {exponent}")
            buckets[exponent] = buckets.get(exponent, 0) + coeff
        terms: List[SignedTerm] = []
        exponent = 0
        while buckets:
            coeff = buckets.pop(exponent, 0)
            if coeff:
                if coeff % 2 == 0:
                    rest, carry = 0, coeff // 2
                else:
                    rest = 1 if coeff > 0 else -1
                    carry = (coeff - rest) // 2
                if rest:
                    terms.append(SignedTerm(rest, exponent))
                if carry:
                    buckets[exponent + 1] = buckets.get(exponent + 1, 0) + carry
            exponent += 1
        return cls(tuple(sorted(terms, key=lambda t: -t.exponent)))

    @classmethod
    def parse(cls, text: str) -> "SignedExpansion":
        """
        Parse an expression like "-2^77+2^50+2^33" or "2^35-2^32-2^18+2^8+1".

        Decimal constants are accepted as terms and expanded in binary.

        Raises:
            ValueError: On malformed input
        """
        source = text.replace(" ", "")
        if not source:
            raise ValueError("Empty seed expression")
        pairs: List[Tuple[int, int]] = []
        pos = 0
        while pos < len(source):
            match = _TERM.match(source, pos)
            if not match or match.end() == pos:
                raise ValueError(f"Malformed seed expression at '{source[pos:]}'")
            if pos > 0 and not match.group(1):
                raise ValueError(f"Missing operator before '{source[pos:]}'")
            sign = -1 if match.group(1) == "-" else 1
            factor = int(match.group(2)) if match.group(2) else 1
            if match.group(3) is not None:
                pairs.extend(_binary_pairs(sign * factor, int(match.group(3))))
            else:
                pairs.extend(_binary_pairs(sign * factor * int(match.group(4)), 0))
            pos = match.end()
        return cls.from_pairs(pairs)

    @classmethod
    def from_int(cls, value: int) -> "SignedExpansion":
        """Non-adjacent form of an integer."""
        terms: List[SignedTerm] = []
        n, exponent = value, 0
        while n != 0:
            if n % 2:
                digit = 2 - (n % 4)
                terms.append(SignedTerm(digit, exponent))
                n -= digit
            n //= 2
            exponent += 1
        return cls(tuple(reversed(terms)))

    @property
    def value(self) -> int:
        return sum(term.value for term in self.terms)

    def __neg__(self) -> "SignedExpansion":
        return SignedExpansion(tuple(SignedTerm(-t.sign, t.exponent) for t in self.terms))

    def absolute(self) -> "SignedExpansion":
        return -self if self.value < 0 else self

    def affine(self, scale: int, offset: int) -> "SignedExpansion":
        """Expansion of scale * self + offset, term by term."""
        pairs: List[Tuple[int, int]] = []
        for term in self.terms:
            for coeff, exponent in _binary_pairs(scale * term.sign, 0):
                pairs.append((coeff, exponent + term.exponent))
        pairs.extend(_binary_pairs(offset, 0))
        return SignedExpansion.from_pairs(pairs)

    @property
    def doublings(self) -> int:
        return self.terms[0].exponent if self.terms else 0

    @property
    def additions(self) -> int:
        return max(len(self.terms) - 1, 0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, term in enumerate(self.terms):
            sign = "-" if term.sign < 0 else ("+" if i else "")
            out.append(f"{sign}2^{term.exponent}" if term.exponent else f"{sign}1")
        return "".join(out)


def _binary_pairs(value: int, shift: int) -> List[Tuple[int, int]]:
    sign = -1 if value < 0 else 1
    magnitude = abs(value)
    pairs = []
    exponent = 0
    while magnitude:
        if magnitude & 1:
            pairs.append((sign, exponent + shift))
        magnitude >>= 1
        exponent += 1
    return pairs


def parse_seed(text: str) -> SignedExpansion:
    """Seed from a decimal integer or a signed 2-power expression."""
    stripped = text.strip()
    if re.fullmatch(r"[+-]?\d+", stripped):
        return SignedExpansion.from_int(int(stripped))
    return SignedExpansion.parse(stripped)


def binary_step_counts(m: int) -> Tuple[int, int]:
    """(doublings, additions) of the left-to-right binary walk on |m|."""
    m = abs(m)
    if m < 1:
        raise ValueError(f"Loop scalar must be nonzero, got {m}")
    return m.bit_length() - 1, bin(m).count("1") - 1
