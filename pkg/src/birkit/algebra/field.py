"""Coefficient fields: the rationals and prime fields GF(p), p < 2**31."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from ..errors import InputError

MAX_PRIME = 2**31


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for q in range(3, isqrt(p) + 1, 2):
        if p % q == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """``p == 0`` encodes the rationals, otherwise GF(p)."""

    p: int = 0

    def __post_init__(self):
        if self.p and (self.p >= MAX_PRIME or not is_prime(self.p)):
            raise InputError(f"GF({self.p}): modulus must be a prime below 2^31")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(int(p))

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        t = text.strip()
        if t.upper() in ("QQ", "Q", "RATIONALS"):
            return cls(0)
        m = re.fullmatch(r"(?:GF|F|ZZ/|Z/)\(?\s*(\d+)\s*\)?", t, flags=re.IGNORECASE)
        if m is None:
            raise InputError(f"unknown field {text!r}; use 'QQ' or 'GF(p)'")
        return cls(int(m.group(1)))

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def characteristic(self) -> int:
        return self.p

    def __str__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    def element(self, value):
        """Coerce an int or Fraction into the field's canonical scalar type."""
        if self.p == 0:
            return Fraction(value)
        value = Fraction(value)
        if value.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator divisible by {self.p}")
        return value.numerator * pow(value.denominator, -1, self.p) % self.p

    def inverse(self, value):
        if self.p == 0:
            return 1 / Fraction(value)
        return pow(value % self.p, -1, self.p)


QQ = FieldSpec(0)


def content(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
        if g == 1:
            break
    return g
