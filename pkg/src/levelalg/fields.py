"""Exact coefficient arithmetic over a prime field or the rationals.

Scalars are plain Python ints in [0, p) for the modular field and
``fractions.Fraction`` for the rational field, so equality, hashing and
serialization behave without surprises. No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

#: Default modulus: 2**31 - 1 (Mersenne prime). Products of two reduced
#: scalars stay below 2**63, which the fast elimination kernel relies on.
DEFAULT_PRIME = 2_147_483_647

Scalar = int | Fraction


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all 64-bit inputs and beyond."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Choice of exact coefficient field: GF(p) or the rationals."""

    kind: str
    prime: int | None = None

    def __post_init__(self) -> None:
        if self.kind == "prime-modular":
            if self.prime is None or not _is_prime(self.prime):
                raise ValueError(f"modulus {self.prime!r} is not a prime")
        elif self.kind == "rational":
            if self.prime is not None:
                raise ValueError("rational field takes no modulus")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def modular(cls, prime: int = DEFAULT_PRIME) -> FieldSpec:
        return cls("prime-modular", prime)

    @classmethod
    def rational(cls) -> FieldSpec:
        return cls("rational")

    @property
    def is_modular(self) -> bool:
        return self.kind == "prime-modular"

    def reduce(self, value: int | Fraction) -> Scalar:
        """Canonical scalar for an integer or fraction."""
        if self.is_modular:
            if isinstance(value, Fraction):
                num = value.numerator % self.prime
                return num * pow(value.denominator, -1, self.prime) % self.prime
            return value % self.prime
        if isinstance(value, Fraction):
            return value
        return Fraction(value)

    def zero(self) -> Scalar:
        return 0 if self.is_modular else Fraction(0)

    def one(self) -> Scalar:
        return 1 if self.is_modular else Fraction(1)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.prime if self.is_modular else a + b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.prime if self.is_modular else a * b

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.prime if self.is_modular else -a

    def describe(self) -> str:
        return f"GF({self.prime})" if self.is_modular else "Q"
