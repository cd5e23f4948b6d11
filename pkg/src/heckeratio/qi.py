"""Grössencharaktere over imaginary quadratic fields of class number one.

Elements of the ring of integers ``Z[theta]`` are pairs ``(a, b) = a + b*theta``
with ``theta^2 + B*theta + C = 0``.  Character values are exact: a raw integral
pair together with a power of the norm that divides it (the Tate twist).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, isqrt
from typing import Iterable, Sequence

import mpmath
import numpy as np

from ._expr import evaluate, parse
from .errors import EvenPrimeUnsupported, TwistTableError, UnitIncompatible

QuadInt = tuple[int, int]


@dataclass(frozen=True)
class QuadField:
    name: str
    B: int
    C: int
    var: str
    unit: QuadInt  # generator of the unit group
    unit_order: int

    @property
    def disc(self) -> int:
        return self.B * self.B - 4 * self.C

    def lattice_constants(self) -> tuple[float, float]:
        """``(c, h)`` with ``#{ideals of norm <= t} <= c (sqrt t + h)^2`` (class number one).

        Translates of the fundamental parallelogram centred at the lattice points
        of norm <= t lie in the disc of radius ``sqrt t + h``, ``h`` its half-diameter.
        """
        covol = math.sqrt(abs(self.disc)) / 2
        re, im = -self.B / 2, math.sqrt(abs(self.disc)) / 2
        h = max(math.hypot(1 + re, im), math.hypot(1 - re, im)) / 2
        return math.pi / (covol * self.unit_order), h

    # ring operations ---------------------------------------------------------
    def mul(self, x: QuadInt, y: QuadInt) -> QuadInt:
        a, b = x
        c, d = y
        bd = b * d
        return (a * c - self.C * bd, a * d + b * c - self.B * bd)

    def add(self, x: QuadInt, y: QuadInt) -> QuadInt:
        return (x[0] + y[0], x[1] + y[1])

    def neg(self, x: QuadInt) -> QuadInt:
        return (-x[0], -x[1])

    def conj(self, x: QuadInt) -> QuadInt:
        # theta + conj(theta) = -B
        return (x[0] - self.B * x[1], -x[1])

    def norm(self, x: QuadInt) -> int:
        a, b = x
        return a * a - self.B * a * b + self.C * b * b

    def pow(self, x: QuadInt, e: int) -> QuadInt:
        if e < 0:
            raise ValueError("negative powers are not integral")
        out, base = (1, 0), x
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def units(self) -> list[QuadInt]:
        out, u = [], (1, 0)
        for _ in range(self.unit_order):
            out.append(u)
            u = self.mul(u, self.unit)
        return out

    def canonical(self, x: QuadInt) -> QuadInt:
        """Associate with the largest (real part, imaginary part)."""
        return max((self.mul(u, x) for u in self.units()), key=lambda y: (2 * y[0] - self.B * y[1], y[1]))

    def divides(self, x: QuadInt, y: QuadInt) -> bool:
        """Whether ``x | y`` in the ring of integers."""
        n = self.norm(x)
        z = self.mul(y, self.conj(x))
        return z[0] % n == 0 and z[1] % n == 0

    def theta_complex(self):
        return (mpmath.mpf(-self.B) + mpmath.sqrt(mpmath.mpf(self.disc))) / 2

    def to_complex(self, x, iota: int = 0):
        """Complex value under the reference embedding (``iota=0``) or its conjugate."""
        th = self.theta_complex()
        if iota:
            th = mpmath.conj(th)
        a, b = x
        if isinstance(a, Fraction):
            a = mpmath.mpf(a.numerator) / a.denominator
            b = mpmath.mpf(b.numerator) / b.denominator
        return a + b * th

    def parse(self, text: str) -> QuadInt:
        def const(q: Fraction):
            if q.denominator != 1:
                raise ValueError("only integral elements are supported")
            return _QI(self, (int(q), 0))

        return evaluate(parse(text), {self.var: _QI(self, (0, 1))}, const).v

    def format(self, x: QuadInt) -> str:
        a, b = x
        if b == 0:
            return str(a)
        bt = self.var if b == 1 else ("-" + self.var if b == -1 else f"{b}{self.var}")
        if a == 0:
            return bt
        return f"{a}{'+' if b > 0 else ''}{bt}"

    def sqrt(self, x: QuadInt) -> QuadInt | None:
        """An exact square root of ``x`` in the ring, if one exists."""
        n = self.norm(x)
        r = isqrt(n)
        if r * r != n:
            return None
        with mpmath.workprec(128 + 4 * max(1, x[0].bit_length(), x[1].bit_length())):
            z = mpmath.sqrt(self.to_complex(x))
            th = self.theta_complex()
            b = z.imag / th.imag
            a = z.real - b * th.real
            cand = (int(mpmath.nint(a)), int(mpmath.nint(b)))
        return cand if self.mul(cand, cand) == tuple(x) else None

    @cached_property
    def tower_layers(self) -> list[tuple[str, str]]:
        poly = f"x^2{'+' if self.B >= 0 else '-'}{abs(self.B)}*x{'+' if self.C >= 0 else '-'}{abs(self.C)}"
        return [(self.var, poly)]


class _QI:
    __slots__ = ("F", "v")

    def __init__(self, F, v):
        self.F, self.v = F, v

    def __add__(self, o):
        return _QI(self.F, self.F.add(self.v, o.v))

    def __sub__(self, o):
        return _QI(self.F, self.F.add(self.v, self.F.neg(o.v)))

    def __neg__(self):
        return _QI(self.F, self.F.neg(self.v))

    def __mul__(self, o):
        return _QI(self.F, self.F.mul(self.v, o.v))


CATALOG: dict[str, QuadField] = {
    "Q(i)": QuadField("Q(i)", 0, 1, "i", (0, 1), 4),
    "Q(w)": QuadField("Q(w)", 1, 1, "w", (0, -1), 6),  # -w is a primitive 6th root of unity
    "Q(sqrt-2)": QuadField("Q(sqrt-2)", 0, 2, "s", (-1, 0), 2),
}


def quad_field(name: str | QuadField) -> QuadField:
    if isinstance(name, QuadField):
        return name
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog field {name!r}; known: {', '.join(CATALOG)}") from None


# primes ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrimeIdeal:
    generator: QuadInt
    norm: int
    kind: str  # "split" | "inert" | "ramified"
    p: int
    root: int | None = None  # theta mod P for residue degree one

    def residue(self, F: QuadField, x: QuadInt):
        """Image of ``x`` in the residue field: an int mod p, or a pair mod p (inert)."""
        if self.kind == "inert":
            return (x[0] % self.p, x[1] % self.p)
        return (x[0] + x[1] * self.root) % self.p


def prime_list(X: int) -> np.ndarray:
    if X < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(X + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(X) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.nonzero(sieve)[0]


def smallest_prime_factor(X: int) -> np.ndarray:
    spf = np.zeros(X + 1, dtype=np.int64)
    for p in range(2, isqrt(X) + 1):
        if spf[p] == 0:
            block = spf[p * p::p]
            block[block == 0] = p
    idx = np.nonzero(spf == 0)[0]
    spf[idx] = idx
    return spf


def _sqrt_mod(a: int, p: int) -> int | None:
    a %= p
    if p == 2 or a == 0:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def _roots_mod(F: QuadField, p: int) -> list[int]:
    if p == 2:
        return [r for r in (0, 1) if (r * r + F.B * r + F.C) % 2 == 0]
    s = _sqrt_mod(F.disc, p)
    if s is None:
        return []
    inv2 = pow(2, -1, p)
    return sorted({(-F.B + s) * inv2 % p, (-F.B - s) * inv2 % p})


def _reduce_lattice(F: QuadField, u: QuadInt, v: QuadInt) -> QuadInt:
    # Lagrange-Gauss reduction for the positive definite norm form
    def dot(x, y):
        return x[0] * y[0] + F.C * x[1] * y[1] - F.B * (x[0] * y[1] + x[1] * y[0]) / 2

    if F.norm(u) > F.norm(v):
        u, v = v, u
    while True:
        mu = round(dot(u, v) / F.norm(u))
        v = (v[0] - mu * u[0], v[1] - mu * u[1])
        if F.norm(v) >= F.norm(u):
            return u
        u, v = v, u


def _prime_generator(F: QuadField, p: int, r: int) -> QuadInt:
    g = _reduce_lattice(F, (p, 0), (-r, 1))
    if F.norm(g) != p:
        raise ArithmeticError(f"no element of norm {p} found (class number > 1?)")
    return F.canonical(g)


def _ideal_key(F: QuadField, x: QuadInt):
    return (-(2 * x[0] - F.B * x[1]), -x[1])


def primes_over(F: QuadField, p: int, X: int | None = None) -> list[PrimeIdeal]:
    roots = _roots_mod(F, p)
    if F.disc % p == 0:
        g = _prime_generator(F, p, roots[0])
        return [PrimeIdeal(g, p, "ramified", p, roots[0])]
    if roots:
        out = []
        for r in roots:
            g = _prime_generator(F, p, r)
            out.append(PrimeIdeal(g, p, "split", p, r))
        return sorted(out, key=lambda P: _ideal_key(F, P.generator))
    if X is not None and p * p > X:
        return []
    return [PrimeIdeal((p, 0), p * p, "inert", p)]


def primes_up_to(F: QuadField | str, X: int) -> list[PrimeIdeal]:
    """Prime ideals of norm at most ``X`` in increasing norm order."""
    F = quad_field(F)
    out = []
    for p in prime_list(X).tolist():
        out.extend(primes_over(F, p, X))
    return sorted(out, key=lambda P: (P.norm, _ideal_key(F, P.generator)))


# residues modulo a principal ideal ------------------------------------------------

@dataclass(frozen=True)
class Residues:
    """``O / (m)`` with a Hermite-normal-form lattice basis."""

    F: QuadField
    modulus: QuadInt

    @cached_property
    def _hnf(self) -> tuple[int, int, int]:
        m0, m1 = self.modulus
        v1 = (m0, m1)
        v2 = (-self.F.C * m1, m0 - self.F.B * m1)
        # bring to basis (h00, 0), (h10, h11)
        a, b = v1, v2
        while b[1]:
            q = a[1] // b[1]
            a, b = b, (a[0] - q * b[0], a[1] - q * b[1])
        h10, h11 = a
        if h11 < 0:
            h10, h11 = -h10, -h11
        h00 = abs(b[0])
        if h00 * h11 != self.F.norm(self.modulus):
            raise ArithmeticError("bad lattice reduction")
        return h00, h10 % h00, h11

    def reduce(self, x: QuadInt) -> QuadInt:
        h00, h10, h11 = self._hnf
        a, b = x
        q = b // h11
        a, b = a - q * h10, b - q * h11
        return (a % h00, b)

    def all(self) -> list[QuadInt]:
        h00, _, h11 = self._hnf
        return [(a, b) for b in range(h11) for a in range(h00)]

    @cached_property
    def unit_group(self) -> list[QuadInt]:
        elems = self.all()
        one = self.reduce((1, 0))
        return [x for x in elems if any(self.reduce(self.F.mul(x, y)) == one for y in elems)]


# characters ----------------------------------------------------------------------------

@dataclass(frozen=True)
class HeckeCharacterSpec:
    """``psi((alpha)) = alpha^k * twist(alpha mod m) * omega_d(P) * N(P)^(-tate)``."""

    field: str = "Q(i)"
    k: int = 0
    twist_modulus: QuadInt | None = None
    twist_table: tuple[tuple[QuadInt, QuadInt], ...] | None = None
    quad_d: QuadInt | None = None
    tate: int = 0

    def __post_init__(self):
        F = self.base
        if self.twist_modulus is not None and self.twist_table is None:
            raise TwistTableError("a twist modulus needs a value table")
        if self.twist_table is not None:
            self._table  # validates multiplicativity
        u = F.unit
        uk = F.pow(u, self.k) if self.k >= 0 else F.pow(F.conj(u), -self.k)
        if F.mul(self.finite_value(u), uk) != (1, 0):
            raise UnitIncompatible(
                f"twist(u)*u^k != 1 for the unit generator {F.format(u)} with k={self.k}")

    @property
    def base(self) -> QuadField:
        return quad_field(self.field)

    @cached_property
    def residues(self) -> Residues | None:
        return None if self.twist_modulus is None else Residues(self.base, self.twist_modulus)

    @cached_property
    def _table(self) -> dict[QuadInt, QuadInt]:
        F, R = self.base, self.residues
        group = R.unit_group
        units = set(F.units())
        table: dict[QuadInt, QuadInt] = {R.reduce((1, 0)): (1, 0)}
        gens = [(R.reduce(x), tuple(v)) for x, v in self.twist_table]
        for x, v in gens:
            if tuple(v) not in units:
                raise TwistTableError(f"twist value {v} is not a root of unity in {F.name}")
            if x not in group:
                raise TwistTableError(f"{x} is not invertible modulo the twist modulus")
        frontier = list(table)
        while frontier:
            y = frontier.pop()
            for x, v in gens:
                z = R.reduce(F.mul(y, x))
                val = F.mul(table[y], v)
                if z in table:
                    if table[z] != val:
                        raise TwistTableError("twist table is not a well-defined character")
                else:
                    table[z] = val
                    frontier.append(z)
        if len(table) != len(group):
            raise TwistTableError("table generators do not generate (O/m)^x")
        for x in group:
            for y in group:
                if table[R.reduce(F.mul(x, y))] != F.mul(table[x], table[y]):
                    raise TwistTableError("twist table is not multiplicative")
        return table

    def finite_value(self, x: QuadInt) -> QuadInt:
        """Twist value at ``x``; (0, 0) when ``x`` is not a unit modulo m."""
        if self.residues is None:
            return (1, 0)
        return self._table.get(self.residues.reduce(x), (0, 0))

    @cached_property
    def d_is_square(self) -> bool:
        return self.quad_d is not None and self.base.sqrt(self.quad_d) is not None

    def with_quad(self, d: QuadInt | str | None) -> "HeckeCharacterSpec":
        if isinstance(d, str):
            d = self.base.parse(d)
        return replace(self, quad_d=d)

    def twisted(self, t: int) -> "HeckeCharacterSpec":
        return replace(self, tate=self.tate + t)

    @property
    def raw_shift(self) -> int:
        """Exponent s0 with ``psi(P) = raw(P) / N(P)^s0`` and ``raw`` integral."""
        return self.tate + max(0, -self.k)

    @property
    def weight(self) -> int:
        """``w`` in the coefficient bound ``|a_n| <= d(n) n^(w/2)``."""
        return abs(self.k) - 2 * self.raw_shift

    def infinity_type(self):
        """Algebraic infinity type ``(k, 0)`` on the embeddings of the base field."""
        from .chartypes import InfinityType
        from .numfield import build_field

        return InfinityType(build_field(self.base.tower_layers), (self.k, 0))

    def to_json(self) -> dict:
        F = self.base
        return {
            "field": self.field,
            "k": self.k,
            "twist_modulus": None if self.twist_modulus is None else F.format(self.twist_modulus),
            "twist_table": None if self.twist_table is None else
            {F.format(x): F.format(v) for x, v in self.twist_table},
            "quad_d": None if self.quad_d is None else F.format(self.quad_d),
            "tate": self.tate,
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "HeckeCharacterSpec":
        if isinstance(data, str):
            data = json.loads(data)
        F = quad_field(data.get("field", "Q(i)"))

        def el(v):
            if v is None:
                return None
            return F.parse(v) if isinstance(v, str) else (int(v), 0)

        table = data.get("twist_table")
        if table is not None:
            table = tuple(sorted((el(x), el(v)) for x, v in table.items()))
        return cls(F.name, int(data.get("k", 0)), el(data.get("twist_modulus")), table,
                   el(data.get("quad_d")), int(data.get("tate", 0)))


def quad_char(F: QuadField | str, d: QuadInt, P: PrimeIdeal, strict: bool = False) -> int:
    """Quadratic character of ``F(sqrt d)/F`` at ``P`` by Euler's criterion."""
    F = quad_field(F)
    if F.sqrt(d) is not None:
        return 1
    if P.norm % 2 == 0:
        if strict:
            raise EvenPrimeUnsupported("the +-1 branch is not defined at primes above 2")
        return 0
    r = P.residue(F, d)
    if P.kind == "inert":
        if r == (0, 0):
            return 0
        v = _pow_fp2(F, r, (P.norm - 1) // 2, P.p)
        if v == (1, 0):
            return 1
        if v == (P.p - 1, 0):
            return -1
        raise ArithmeticError("Euler criterion gave a non-sign")
    if r == 0:
        return 0
    v = pow(r, (P.p - 1) // 2, P.p)
    return 1 if v == 1 else -1


def _pow_fp2(F: QuadField, x: QuadInt, e: int, p: int) -> QuadInt:
    out, base = (1, 0), x
    while e:
        if e & 1:
            out = tuple(c % p for c in F.mul(out, base))
        base = tuple(c % p for c in F.mul(base, base))
        e >>= 1
    return out


def char_raw(chi: HeckeCharacterSpec, P: PrimeIdeal) -> QuadInt:
    """Integral part of ``chi(P)``; the full value is ``raw / N(P)^chi.raw_shift``."""
    F = chi.base
    alpha = P.generator
    tw = chi.finite_value(alpha)
    if tw == (0, 0):
        return (0, 0)
    sign = 1
    if chi.quad_d is not None:
        sign = quad_char(F, chi.quad_d, P)
        if sign == 0:
            return (0, 0)
    v = F.pow(alpha, chi.k) if chi.k >= 0 else F.pow(F.conj(alpha), -chi.k)
    v = F.mul(v, tw)
    return v if sign == 1 else F.neg(v)


def char_value(chi: HeckeCharacterSpec, P: PrimeIdeal) -> tuple[Fraction, Fraction]:
    """Exact value ``chi(P)`` as coordinates on ``(1, theta)``."""
    a, b = char_raw(chi, P)
    den = P.norm ** chi.raw_shift
    return (Fraction(a, den), Fraction(b, den))


# coefficient streams ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CoefficientStream:
    """``a_n = (c0[n] + c1[n] theta) / n^shift`` for ``1 <= n <= X``."""

    F: QuadField
    X: int
    c0: list
    c1: list
    shift: int
    weight: int  # bound |a_n| <= d_k(n) n^(weight/2)
    divisor_order: int = 2  # k in d_k(n)
    label: str = ""
    ideal_bound: bool = False  # |a_n| <= #{ideals of norm n} n^(weight/2) as well

    def exact(self, n: int) -> tuple[Fraction, Fraction]:
        den = n ** self.shift
        return (Fraction(self.c0[n], den), Fraction(self.c1[n], den))

    def raw(self, n: int) -> QuadInt:
        return (self.c0[n], self.c1[n])

    def complex(self, n: int, iota: int = 0):
        return self.F.to_complex(self.exact(n), iota)

    def conjugate(self) -> "CoefficientStream":
        B = self.F.B
        c0 = [a - B * b for a, b in zip(self.c0, self.c1)]
        c1 = [-b for b in self.c1]
        return replace(self, c0=c0, c1=c1, label=f"conj({self.label})")

    def truncate(self, X: int) -> "CoefficientStream":
        return replace(self, X=X, c0=self.c0[:X + 1], c1=self.c1[:X + 1])

    def is_real(self) -> bool:
        """Whether every coefficient is real under the reference embedding."""
        # a + b theta is real iff b = 0 for these fields
        return not any(self.c1[1:])


def _local_factor(F: QuadField, p: int, ideals: list[tuple[PrimeIdeal, QuadInt]], X: int) -> list[QuadInt]:
    """Coefficients of prod_P (1 - raw(P) T^f)^(-1) at T^e (p^e <= X)."""
    E = 0
    pe = 1
    while pe * p <= X:
        pe *= p
        E += 1
    series = [(1, 0)] + [(0, 0)] * E
    for P, v in ideals:
        f = 1 if P.norm == p else 2
        geo = [(0, 0)] * (E + 1)
        geo[0] = (1, 0)
        for j in range(1, E // f + 1):
            geo[j * f] = F.mul(geo[(j - 1) * f], v)
        new = [(0, 0)] * (E + 1)
        for i, x in enumerate(series):
            if x == (0, 0):
                continue
            for j in range(E + 1 - i):
                if geo[j] != (0, 0):
                    new[i + j] = F.add(new[i + j], F.mul(x, geo[j]))
        series = new
    return series


def coefficients(chi: HeckeCharacterSpec, X: int) -> CoefficientStream:
    """Dirichlet coefficients ``a_n = sum_{N a = n} chi(a)`` for ``n <= X``."""
    return _coefficients_cached(chi, int(X))


@lru_cache(maxsize=8)
def _coefficients_cached(chi: HeckeCharacterSpec, X: int) -> CoefficientStream:
    F = chi.base
    c0 = [0] * (X + 1)
    c1 = [0] * (X + 1)
    if X >= 1:
        c0[1] = 1
    if X < 2:
        return CoefficientStream(F, X, c0, c1, chi.raw_shift, chi.weight, 2, _label(chi), True)
    # every ideal of norm n carries the same denominator n^shift, so raw values suffice
    s0 = chi.raw_shift
    local: dict[int, QuadInt] = {}
    for p in prime_list(X).tolist():
        ideals = [(P, char_raw(chi, P)) for P in primes_over(F, p, X)]
        series = _local_factor(F, p, ideals, X)
        pe = 1
        for e in range(1, len(series)):
            pe *= p
            a, b = series[e]
            local[pe] = (a, b)
    spf = smallest_prime_factor(X)
    for n in range(2, X + 1):
        p = int(spf[n])
        m, pe = n // p, p
        while m % p == 0:
            m //= p
            pe *= p
        x = local[pe]
        if m == 1:
            c0[n], c1[n] = x
            continue
        if x == (0, 0):
            continue
        a, b = c0[m], c1[m]
        if a == 0 and b == 0:
            continue
        c0[n], c1[n] = F.mul(x, (a, b))
    return CoefficientStream(F, X, c0, c1, s0, chi.weight, 2, _label(chi), True)


def _label(chi: HeckeCharacterSpec) -> str:
    d = "" if chi.quad_d is None else f", d={chi.base.format(chi.quad_d)}"
    t = "" if chi.tate == 0 else f", tate={chi.tate}"
    return f"{chi.field} k={chi.k}{d}{t}"


def convolve(a: CoefficientStream, b: CoefficientStream, X: int | None = None) -> CoefficientStream:
    """Dirichlet convolution, truncated at ``X``."""
    if a.F != b.F or a.shift != b.shift:
        raise ValueError("streams must share the field and the norm shift")
    F = a.F
    X = min(a.X, b.X) if X is None else X
    c0 = [0] * (X + 1)
    c1 = [0] * (X + 1)
    bnz = [(j, (b.c0[j], b.c1[j])) for j in range(1, X + 1) if b.c0[j] or b.c1[j]]
    for i in range(1, X + 1):
        x = (a.c0[i], a.c1[i])
        if x == (0, 0):
            continue
        lim = X // i
        for j, y in bnz:
            if j > lim:
                break
            u, v = F.mul(x, y)
            c0[i * j] += u
            c1[i * j] += v
    return CoefficientStream(F, X, c0, c1, a.shift, max(a.weight, b.weight),
                             a.divisor_order + b.divisor_order, f"{a.label} * {b.label}")


def base_change_coeffs(psi: HeckeCharacterSpec, d: QuadInt | str, X: int) -> CoefficientStream:
    """Coefficients of ``L(s, psi) L(s, psi omega_d)``: the base change to ``F1(sqrt d)``."""
    plain = replace(psi, quad_d=None)
    return convolve(coefficients(plain, X), coefficients(plain.with_quad(d), X), X)


def divisor_counts(X: int, order: int = 2) -> np.ndarray:
    """``d_k(n)`` for ``n <= X``."""
    d = np.zeros(X + 1, dtype=np.int64)
    d[1:] = 1
    for _ in range(order - 1):
        new = np.zeros_like(d)
        for i in range(1, X + 1):
            new[i::i] += d[1:X // i + 1]
        d = new
    return d
