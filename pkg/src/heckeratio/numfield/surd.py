"""Exact surds ``i^e * q * sqrt(r)``."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import mpmath
from sympy import factorint


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(s, r)`` with ``n = s^2 * r`` and ``r`` squarefree (``n >= 1``)."""
    if n < 1:
        raise ValueError("n must be positive")
    s, r = 1, 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            r *= p
    return s, r


@dataclass(frozen=True)
class SurdValue:
    e: int = 0
    q: Fraction = Fraction(1)
    r: int = 1

    def __post_init__(self):
        object.__setattr__(self, "e", self.e % 4)
        object.__setattr__(self, "q", Fraction(self.q))
        if self.q <= 0:
            raise ValueError("rational part must be positive")
        if self.r < 1 or squarefree_decomposition(self.r)[0] != 1:
            raise ValueError("radicand must be a squarefree positive integer")

    @classmethod
    def one(cls) -> "SurdValue":
        return cls()

    @classmethod
    def i(cls) -> "SurdValue":
        return cls(1)

    @classmethod
    def rational(cls, x) -> "SurdValue":
        x = Fraction(x)
        if x == 0:
            raise ValueError("SurdValue is never zero")
        return cls(0 if x > 0 else 2, abs(x), 1)

    @classmethod
    def sqrt(cls, x) -> "SurdValue":
        """Principal square root of a nonzero rational (``i * sqrt|x|`` for ``x < 0``)."""
        x = Fraction(x)
        if x == 0:
            raise ValueError("SurdValue is never zero")
        e = 0 if x > 0 else 1
        a, b = abs(x).numerator, abs(x).denominator
        s, r = squarefree_decomposition(a * b)
        return cls(e, Fraction(s, b), r)

    def __mul__(self, other: "SurdValue") -> "SurdValue":
        s, r = squarefree_decomposition(self.r * other.r)
        return SurdValue(self.e + other.e, self.q * other.q * s, r)

    def inverse(self) -> "SurdValue":
        return SurdValue(-self.e, 1 / (self.q * self.r), self.r)

    def __truediv__(self, other: "SurdValue") -> "SurdValue":
        return self * other.inverse()

    def __pow__(self, n: int) -> "SurdValue":
        if n < 0:
            return self.inverse() ** (-n)
        out = SurdValue()
        for _ in range(n):
            out = out * self
        return out

    def equal_mod_rationals(self, other: "SurdValue") -> bool:
        quo = self / other
        return quo.r == 1 and quo.e % 2 == 0

    def is_rational(self) -> bool:
        return self.r == 1 and self.e % 2 == 0

    def to_complex(self):
        unit = [1, 1j, -1, -1j][self.e]
        return mpmath.mpc(unit) * mpmath.mpf(self.q.numerator) / self.q.denominator * mpmath.sqrt(self.r)

    def galois_sign(self, ctx, g: int) -> int:
        """``gamma_g(x) / x`` for this surd, computed through the closure."""
        from .galois import galois_action_on_sqrt

        sign = galois_action_on_sqrt(ctx, g, self.r)
        if self.e % 2:
            sign *= galois_action_on_sqrt(ctx, g, -1)
        return sign

    def __str__(self):
        unit = ["", "i*", "-", "-i*"][self.e]
        rad = "" if self.r == 1 else f"*sqrt({self.r})"
        return f"{unit}{self.q}{rad}"

    def to_json(self) -> dict:
        return {"i_exponent": self.e, "rational": str(self.q), "radicand": self.r, "text": str(self)}
