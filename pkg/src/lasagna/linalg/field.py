"""Exact coefficient fields: GF(p) for prime p, and the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """A field with exact arithmetic.

    ``characteristic == 0`` means the rationals (elements are ``Fraction``);
    otherwise elements are ints reduced into ``range(p)``.
    """

    characteristic: int = 2

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not _is_prime(p):
            raise ValueError(f"field characteristic must be 0 or prime, got {p}")

    @classmethod
    def parse(cls, text: str | int) -> "Field":
        """Accepts ``2``, ``GF(3)``, ``F5``, ``Q``, ``0``."""
        if isinstance(text, int):
            return cls(text)
        s = str(text).strip().upper()
        if s in ("Q", "QQ", "0", "RATIONALS"):
            return cls(0)
        for prefix in ("GF(", "F"):
            if s.startswith(prefix):
                s = s[len(prefix):].rstrip(")")
                break
        try:
            return cls(int(s))
        except ValueError:
            raise ValueError(f"unknown field {text!r}") from None

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def __call__(self, x):
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, p)) % p
        return int(x) % p

    def add(self, a, b):
        s = a + b
        return s if self.characteristic == 0 else s % self.characteristic

    def sub(self, a, b):
        s = a - b
        return s if self.characteristic == 0 else s % self.characteristic

    def mul(self, a, b):
        s = a * b
        return s if self.characteristic == 0 else s % self.characteristic

    def neg(self, a):
        return -a if self.characteristic == 0 else (-a) % self.characteristic

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / Fraction(a)
        return pow(a, -1, self.characteristic)

    def to_json(self, a):
        """Serializable form: int for GF(p), int or "n/d" string for Q."""
        if self.characteristic == 0:
            a = Fraction(a)
            return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return int(a)


GF2 = Field(2)
QQ = Field(0)
