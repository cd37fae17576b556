"""
Naive final exponentiation f -> f^((p^k - 1)/r).

The exponent splits as (p^(k/2) - 1) * h * Phi_k(p)/r with
h = (p^(k/2) + 1)/Phi_k(p). The first factor is conj(f)/f and h is applied
through Frobenius powers of its base-p digits. The hard factor Phi_k(p)/r
is also written in base p, every digit in non-adjacent form, and evaluated
as one multi-exponentiation over the Frobenius images sharing a single
squaring chain; negative digits use the conjugate, which inverts elements
of order dividing p^(k/2) + 1. Nothing here is tallied.
"""

import logging
from functools import lru_cache
from typing import Dict, List, Tuple

from pairnet.curves.instance import CurveInstance
from pairnet.curves.scalar import SignedExpansion
from pairnet.fieldtower.counter import paused
from pairnet.fieldtower.element import FieldElement
from pairnet.fieldtower.prime_field import ZeroInversionError

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def cyclotomic_value(n: int, p: int) -> int:
    """Phi_n(p) as an integer."""
    value = p ** n - 1
    for d in range(1, n):
        if n % d == 0:
            value //= cyclotomic_value(d, p)
    return value


def base_digits(value: int, p: int) -> List[int]:
    """Base-p digits, least significant first."""
    digits = []
    while value:
        value, digit = divmod(value, p)
        digits.append(digit)
    return digits


@lru_cache(maxsize=None)
def hard_part_digits(k: int, p: int, r: int) -> Tuple[SignedExpansion, ...]:
    """Phi_k(p)/r in base p, least significant digit first, each digit in NAF."""
    phi = cyclotomic_value(k, p)
    if phi % r:
        raise ValueError(f"r={r} does not divide Phi_{k}(p)")
    return tuple(SignedExpansion.from_int(d) for d in base_digits(phi // r, p))


def frobenius_multi_pow(g: FieldElement, digits: Tuple[SignedExpansion, ...]) -> FieldElement:
    """
    prod_i (g^(p^i))^(d_i) for g of order dividing p^(k/2) + 1.

    Args:
        g: Element of the norm-one subgroup of F_{p^k}
        digits: Signed base-p digits d_i, least significant first

    Returns:
        g raised to sum_i d_i p^i
    """
    bases = [g]
    for _ in range(1, len(digits)):
        bases.append(bases[-1].frobenius(1))
    inverses = [b.conjugate() for b in bases]
    by_exponent: Dict[int, List[Tuple[int, int]]] = {}
    for i, digit in enumerate(digits):
        for term in digit.terms:
            by_exponent.setdefault(term.exponent, []).append((i, term.sign))
    acc = FieldElement.one(g.tower, g.degree)
    if not by_exponent:
        return acc
    for exponent in range(max(by_exponent), -1, -1):
        if not acc.is_one():
            acc = acc.square()
        for i, sign in by_exponent.get(exponent, ()):
            acc = acc * (bases[i] if sign > 0 else inverses[i])
    return acc


def final_exp(f: FieldElement, instance: CurveInstance) -> FieldElement:
    """
    f^((p^k - 1)/r) for f in F_{p^k}.

    Raises:
        ZeroInversionError: If f is zero
        ValueError: If r does not divide Phi_k(p)
    """
    if f.is_zero():
        raise ZeroInversionError("Final exponentiation of zero")
    k, p, r = instance.k, instance.p, instance.r
    f = f.embed(k)
    digits = hard_part_digits(k, p, r)
    with paused():
        g = f.conjugate() * f.inverse()
        h = (p ** (k // 2) + 1) // cyclotomic_value(k, p)
        acc = FieldElement.one(f.tower, k)
        for i, digit in enumerate(base_digits(h, p)):
            if digit:
                acc = acc * g.frobenius(i).uncounted_pow(digit)
        return frobenius_multi_pow(acc, digits)
