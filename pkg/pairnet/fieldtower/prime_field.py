"""
Prime Field Arithmetic

Implements:
1. Modulus validation (probabilistic primality)
2. Reduction, inversion and exponentiation modulo p
3. Quadratic and cubic residuosity tests
4. Square roots (Tonelli-Shanks)

Values are plain Python integers in [0, p); the extension tower builds
its nested coefficient tuples on top of them.
"""

import logging
from typing import Optional

from Crypto.Util.number import inverse, isPrime

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class FieldMismatchError(ValueError):
    """Operands belong to different fields or levels."""


class ZeroInversionError(ZeroDivisionError):
    """Inversion of zero."""


class PrimeField:
    """The base field F_p."""

    def __init__(self, modulus: int, check_prime: bool = True):
        """
        Initialize prime field.

        Args:
            modulus: Prime p > 3
            check_prime: Run the probabilistic primality test

        Raises:
            ValueError: If p is not an odd prime greater than 3
        """
        if modulus <= 3:
            raise ValueError(f"Modulus must be a prime greater than 3, got {modulus}")
        if check_prime and not isPrime(modulus):
            raise ValueError(f"Modulus is not prime: {modulus}")
        self.p = modulus

    def reduce(self, value: int) -> int:
        return value % self.p

    def inv(self, value: int) -> int:
        value %= self.p
        if value == 0:
            raise ZeroInversionError("Inversion of zero in F_p")
        return inverse(value, self.p)

    def pow(self, value: int, exponent: int) -> int:
        if exponent < 0:
            return pow(self.inv(value), -exponent, self.p)
        return pow(value, exponent, self.p)

    def is_square(self, value: int) -> bool:
        value %= self.p
        return value == 0 or pow(value, (self.p - 1) // 2, self.p) == 1

    def is_cube(self, value: int) -> bool:
        value %= self.p
        if value == 0 or (self.p - 1) % 3 != 0:
            return True
        return pow(value, (self.p - 1) // 3, self.p) == 1

    def sqrt(self, value: int) -> Optional[int]:
        """
        Square root modulo p.

        Returns:
            A root, or None if value is a non-residue
        """
        value %= self.p
        if value == 0:
            return 0
        if not self.is_square(value):
            return None
        p = self.p
        if p % 4 == 3:
            return pow(value, (p + 1) // 4, p)

        # Tonelli-Shanks
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while self.is_square(z):
            z += 1
        m, c = s, pow(z, q, p)
        t, root = pow(value, q, p), pow(value, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, root = t * c % p, root * b % p
        return root

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("F_p", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"
