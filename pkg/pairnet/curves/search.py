"""
Desk-scale seed search.

Seeds are tried in the order 2, -2, 3, -3, ... The first seed whose p(x)
is prime and whose r(x) has a usable prime factor wins. r is r(x) itself
when prime, otherwise its largest prime factor, accepted only when trial
division below TRIAL_DIVISION_BOUND leaves a cofactor of 1 or a prime.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional

from Crypto.Util.number import isPrime

from pairnet.curves.families import FamilyParams

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

TRIAL_DIVISION_BOUND = 1 << 16
MIN_SUBGROUP_ORDER = 1 << 8


@dataclass(frozen=True)
class DeskSeed:
    x: int
    p: int
    r: int
    r_full: int


def seed_order(start: int = 2) -> Iterator[int]:
    n = start
    while True:
        yield n
        yield -n
        n += 1


def subgroup_prime(n: int, bound: int = TRIAL_DIVISION_BOUND) -> Optional[int]:
    """Largest prime factor of n under the trial-division rule, or None."""
    if n < 2:
        return None
    if isPrime(n):
        return n
    factors: List[int] = []
    d = 2
    while d < bound and d * d <= n:
        while n % d == 0:
            factors.append(d)
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        if not isPrime(n):
            return None
        factors.append(n)
    return max(factors) if factors else None


def search_desk_seed(params: FamilyParams, limit: int = 5000,
                     min_subgroup: int = MIN_SUBGROUP_ORDER) -> DeskSeed:
    """
    Find the smallest admissible desk-scale seed.

    Raises:
        ValueError: If no seed is found within `limit` magnitudes
    """
    for x in seed_order():
        if abs(x) > limit:
            break
        if not params.admissible(x):
            continue
        p, r_full = params.p(x), params.r(x)
        if p <= 3 or r_full < 2 or not isPrime(p):
            continue
        r = subgroup_prime(r_full)
        if r is None or r < min_subgroup:
            continue
        logger.info(f"Desk seed for {params.name}: x={x}, p={p}, r={r}")
        return DeskSeed(x=x, p=p, r=r, r_full=r_full)
    raise ValueError(f"No desk-scale seed for {params.name} with |x| <= {limit}")
