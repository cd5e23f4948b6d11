"""Archimedean factors, Dirichlet sums with rigorous tails, completed values and ratios.

Conventions: a stream carries ``|a_n| <= d_k(n) n^(w/2)``; the sum
``sum a_n n^(-s)`` converges absolutely for ``Re s > w/2 + 1`` and the
truncation tail is bounded with ``sigma = Re s - w/2``.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath
from mpmath import mp

from .chartypes import InfinityType, analytic_type, critical_set
from .errors import (DenominatorIndistinguishableFromZero, NotCritical, OutsideConvergence, PoleAtS,
                     TailTooLarge)
from .qi import CoefficientStream, HeckeCharacterSpec, char_raw, coefficients, primes_up_to

DEFAULT_BITS = 192
BLOCK = 1 << 14
X_CAP = 10 ** 8
DEFAULT_TAIL = 1e-10


@dataclass(frozen=True)
class EvalResult:
    value: mpmath.mpc
    tail_bound: mpmath.mpf
    precision_bits: int
    X: int
    rounding_bound: mpmath.mpf = mpmath.mpf(0)
    rigorous: bool = True
    s: object = None
    label: str = ""

    @property
    def error_bound(self) -> mpmath.mpf:
        return self.tail_bound + self.rounding_bound

    def to_json(self, digits: int = 40) -> dict:
        v = mpmath.mpc(self.value)
        return {
            "s": str(self.s), "label": self.label,
            "value_re": mpmath.nstr(v.real, digits), "value_im": mpmath.nstr(v.imag, digits),
            "tail_bound": mpmath.nstr(self.tail_bound, 6), "rounding_bound": mpmath.nstr(self.rounding_bound, 6),
            "error_bound": mpmath.nstr(self.error_bound, 6), "X": self.X, "bits": self.precision_bits,
            "rigorous": self.rigorous,
        }


@dataclass(frozen=True)
class RatioResult:
    m: int
    m1: int
    ratio: mpmath.mpc
    error_bound: mpmath.mpf
    numerator: EvalResult | None = None
    denominator: EvalResult | None = None
    bits: int = DEFAULT_BITS  # working precision when there are no component results

    @property
    def precision_bits(self) -> int:
        parts = [r.precision_bits for r in (self.numerator, self.denominator) if r is not None]
        return max(parts) if parts else self.bits

    def inverse(self) -> "RatioResult":
        with mp.workprec(self.precision_bits + 32):
            r = 1 / self.ratio
            # |1/x - 1/y| <= |x - y| / (|x| (|x| - e))
            err = self.error_bound / (abs(self.ratio) * (abs(self.ratio) - self.error_bound))
        return RatioResult(self.m1, self.m, r, err, self.denominator, self.numerator, self.precision_bits)

    def __mul__(self, other: "RatioResult") -> "RatioResult":
        bits = min(self.precision_bits, other.precision_bits)
        with mp.workprec(bits + 32):
            a, b = self.ratio, other.ratio
            ea, eb = self.error_bound, other.error_bound
            prod = a * b
            err = abs(a) * eb + abs(b) * ea + ea * eb + abs(prod) * mpmath.ldexp(1, -bits)
        return RatioResult(self.m, self.m1, prod, err, bits=bits)

    def to_json(self, digits: int = 40) -> dict:
        return {"m": self.m, "m_plus_1": self.m1,
                "ratio_re": mpmath.nstr(self.ratio.real, digits), "ratio_im": mpmath.nstr(self.ratio.imag, digits),
                "error_bound": mpmath.nstr(self.error_bound, 6)}


# Gamma factors -------------------------------------------------------------------------

def _nonpositive_integer(x) -> bool:
    x = mpmath.mpmathify(x)
    re, im = (x.real, x.imag) if isinstance(x, mpmath.mpc) else (x, 0)
    return im == 0 and re <= 0 and re == mpmath.floor(re)


def gamma_R(s):
    """``pi^(-s/2) Gamma(s/2)``."""
    s = mpmath.mpmathify(s)
    if _nonpositive_integer(s / 2):
        raise PoleAtS(f"Gamma_R has a pole at {s}")
    return mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2)


def gamma_C(s):
    """``2 (2 pi)^(-s) Gamma(s)``."""
    s = mpmath.mpmathify(s)
    if _nonpositive_integer(s):
        raise PoleAtS(f"Gamma_C has a pole at {s}")
    return 2 * (2 * mpmath.pi) ** (-s) * mpmath.gamma(s)


def linf_factor(t: InfinityType, s):
    """Product of Gamma_R(s + n_v + eps_v) over real and Gamma_C(s + max(n, n~)) over complex places."""
    emb = t.emb
    par = iter(t.real_parities())
    out = mpmath.mpf(1)
    for p in emb.places:
        if p.kind == "real":
            out *= gamma_R(s + t[p.indices[0]] + next(par))
        else:
            a, b = t[p.indices[0]], t[p.indices[1]]
            out *= gamma_C(s + mpmath.mpf(a + b) / 2 + mpmath.mpf(abs(a - b)) / 2)
    return out


# tail bounds -------------------------------------------------------------------------

def tail_bound(X: int, sigma, divisor_order: int = 2, lattice: tuple[float, float] | None = None) -> mpmath.mpf:
    """Upper bound for ``sum_{n > X} b_n n^(-sigma)``, ``sigma > 1``, with ``b_n = d_k(n)``.

    For k = 2 partial summation with ``sum_{n<=t} d(n) <= t (log t + 1)`` gives
    ``sigma X^(1-sigma) (log X + 1 + 1/(sigma-1)) / (sigma-1)``.  For every k,
    ``X^(s0-sigma) zeta(s0)^k`` holds for ``1 < s0 < sigma``; the minimum over a
    grid of ``s0`` is taken.  With ``lattice = (c, h)`` the coefficients are
    ideal counts bounded by ``sum_{n<=t} b_n <= c (sqrt t + h)^2`` and the same
    partial summation applies to that majorant.
    """
    with mp.workprec(64):
        sigma = mpmath.mpf(sigma)
        if sigma <= 1:
            raise OutsideConvergence("tail bound needs sigma > 1")
        X = max(int(X), 1)
        best = mpmath.inf
        if divisor_order == 2:
            best = sigma * mpmath.mpf(X) ** (1 - sigma) * (mpmath.log(X) + 1 + 1 / (sigma - 1)) / (sigma - 1)
        elif divisor_order == 1:
            best = mpmath.mpf(X) ** (1 - sigma) / (sigma - 1) + mpmath.mpf(X) ** (-sigma)
        for j in range(1, 64):
            s0 = 1 + (sigma - 1) * j / 64
            b = mpmath.mpf(X) ** (s0 - sigma) * (mpmath.zeta(s0) * (1 + mpmath.mpf(2) ** -40)) ** divisor_order
            best = min(best, b)
        if lattice is not None:
            c, h = (mpmath.mpf(v) * (1 + mpmath.mpf(2) ** -40) for v in lattice)
            Xm = mpmath.mpf(X)
            b = sigma * c * (Xm ** (1 - sigma) / (sigma - 1) + 2 * h * Xm ** (mpmath.mpf(1) / 2 - sigma)
                             / (sigma - mpmath.mpf(1) / 2) + h * h * Xm ** (-sigma) / sigma)
            best = min(best, b)
        return best


def choose_X(weight: int, s_real, tail: float, divisor_order: int = 2, cap: int = X_CAP,
             lattice: tuple[float, float] | None = None) -> int:
    """A near-minimal X whose tail bound is at most ``tail``."""
    sigma = mpmath.mpf(s_real) - mpmath.mpf(weight) / 2
    if sigma <= 1:
        raise OutsideConvergence(f"Re s = {s_real} is not in the region Re s > w/2 + 1 = {weight / 2 + 1}")

    def bound(x):
        return tail_bound(x, sigma, divisor_order, lattice)

    lo, hi = 1, 2
    while bound(hi) > tail:
        lo, hi = hi, hi * 2
        if hi > cap:
            if bound(cap) > tail:
                raise TailTooLarge(f"tail {tail} needs X beyond the cap {cap}")
            hi = cap
            break
    while hi - lo > max(1, hi // 64):
        mid = (lo + hi) // 2
        if bound(mid) <= tail:
            hi = mid
        else:
            lo = mid
    return hi


# Dirichlet sums ----------------------------------------------------------------------------

def _lattice(stream: CoefficientStream):
    return stream.F.lattice_constants() if stream.ideal_bound else None


def _int_block(args):
    c0, c1, start, u, P = args
    half = 1 << P
    s0 = s1 = 0
    for k in range(len(c0)):
        a, b = c0[k], c1[k]
        if a == 0 and b == 0:
            continue
        N = (start + k) ** u
        N2 = 2 * N
        if a:
            s0 += (2 * a * half + N) // N2
        if b:
            s1 += (2 * b * half + N) // N2
    return s0, s1


def _mp_block(args):
    c0, c1, start, u, prec, theta = args
    with mp.workprec(prec):
        u = mpmath.mpmathify(u)
        theta = mpmath.mpmathify(theta)
        acc = mpmath.mpc(0)
        mag = mpmath.mpf(0)
        for k in range(len(c0)):
            a, b = c0[k], c1[k]
            if a == 0 and b == 0:
                continue
            n = start + k
            term = (a + b * theta) * mpmath.power(n, -u)
            acc += term
            mag += abs(term)
        return acc, mag


def _map_blocks(fn, jobs, workers: int):
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, jobs))


def dirichlet_sum(stream: CoefficientStream, s, required_tail=None, iota: int = 0,
                  bits: int = DEFAULT_BITS, workers: int = 1, X: int | None = None) -> EvalResult:
    """``sum_{n <= X} a_n n^(-s)`` with a proven bound on the discarded tail.

    Blocks of fixed size are summed independently and merged in index order, so
    the result does not depend on ``workers``.  Real integer ``s + shift`` uses
    exact fixed-point integer arithmetic.
    """
    X = stream.X if X is None else min(X, stream.X)
    s = mpmath.mpmathify(s)
    s_re = s.real if isinstance(s, mpmath.mpc) else s
    sigma = s_re - mpmath.mpf(stream.weight) / 2
    if sigma <= 1:
        raise OutsideConvergence(f"Re s = {s_re} <= w/2 + 1 = {stream.weight / 2 + 1}")
    tail = tail_bound(X, sigma, stream.divisor_order, _lattice(stream))
    if required_tail is not None and tail > required_tail:
        raise TailTooLarge(f"tail bound {mpmath.nstr(tail, 5)} at X={X} exceeds {required_tail}")
    u = s + stream.shift
    starts = list(range(1, X + 1, BLOCK))
    prec = bits + 32
    with mp.workprec(prec):
        theta = stream.F.theta_complex()
        if iota:
            theta = mpmath.conj(theta)
        integral = (not isinstance(u, mpmath.mpc) or u.imag == 0) and mpmath.mpf(mpmath.re(u)) == int(mpmath.re(u))
        if integral:
            ui = int(mpmath.re(u))
            P = prec + X.bit_length()
            jobs = [(stream.c0[a:min(a + BLOCK, X + 1)], stream.c1[a:min(a + BLOCK, X + 1)], a, ui, P)
                    for a in starts]
            parts = _map_blocks(_int_block, jobs, workers)
            S0 = sum(p[0] for p in parts)
            S1 = sum(p[1] for p in parts)
            scale = mpmath.ldexp(1, -P)
            value = (mpmath.mpf(S0) + mpmath.mpf(S1) * theta) * scale
            rounding = mpmath.mpf(X) / 2 * scale * (1 + abs(theta)) + abs(value) * mpmath.ldexp(1, -prec + 2)
        else:
            jobs = [(stream.c0[a:min(a + BLOCK, X + 1)], stream.c1[a:min(a + BLOCK, X + 1)], a, u, prec, theta)
                    for a in starts]
            parts = _map_blocks(_mp_block, jobs, workers)
            value = mpmath.mpc(0)
            mag = mpmath.mpf(0)
            for v, m in parts:
                value += v
                mag += m
            # each term and each addition is accurate to a few ulps of the running magnitude
            rounding = 8 * (X + 1) * mag * mpmath.ldexp(1, -prec)
    return EvalResult(mpmath.mpc(value), tail, bits, X, rounding, True, s, stream.label)


def euler_product(chi: HeckeCharacterSpec, s, X: int, iota: int = 0, bits: int = DEFAULT_BITS) -> EvalResult:
    """``prod_{N P <= X} (1 - chi(P) N P^(-s))^(-1)`` with a heuristic tail estimate."""
    s = mpmath.mpmathify(s)
    s_re = s.real if isinstance(s, mpmath.mpc) else s
    sigma = s_re - mpmath.mpf(chi.weight) / 2
    if sigma <= 1:
        raise OutsideConvergence(f"Re s = {s_re} <= w/2 + 1")
    F = chi.base
    with mp.workprec(bits + 32):
        u = s + chi.raw_shift
        val = mpmath.mpc(1)
        for P in primes_up_to(F, X):
            raw = char_raw(chi, P)
            if raw == (0, 0):
                continue
            val /= 1 - F.to_complex(raw, iota) * mpmath.power(P.norm, -u)
        # heuristic: log of the missing factors is about sum_{p > X} 2 p^(-sigma)
        h = 2 * mpmath.mpf(X) ** (1 - sigma) / ((sigma - 1) * mpmath.log(X))
        tail = abs(val) * (mpmath.exp(h) - 1)
    return EvalResult(mpmath.mpc(val), tail, bits, X, mpmath.mpf(0), False, s, f"euler {chi.field} k={chi.k}")


# completed values ---------------------------------------------------------------------------

def _check_point(chi: HeckeCharacterSpec, iota: int, m: int):
    t = analytic_type(chi, iota)
    g = linf_factor(t, m)  # raises PoleAtS first
    if m not in critical_set(t):
        raise NotCritical(f"m = {m} is not critical for the analytic type {t.exponents}")
    if m - mpmath.mpf(chi.weight) / 2 <= 1:
        raise OutsideConvergence(f"m = {m} is outside the absolute convergence region Re s > {chi.weight / 2 + 1}")
    return g


def completed(chi: HeckeCharacterSpec, iota: int, m: int, tail=DEFAULT_TAIL, X: int | None = None,
              bits: int = DEFAULT_BITS, workers: int = 1) -> EvalResult:
    """``L(m, chi) = L_inf(m) L_f(m)`` for a critical ``m`` in the convergence region."""
    with mp.workprec(bits + 32):
        g = _check_point(chi, iota, m)
        if X is None:
            X = choose_X(chi.weight, m, tail, lattice=chi.base.lattice_constants())
        stream = coefficients(chi, X)
        L = dirichlet_sum(stream, m, None, iota, bits, workers)
        value = g * L.value
        err = abs(g) * L.error_bound + abs(value) * mpmath.ldexp(1, -bits)
    return EvalResult(value, abs(g) * L.tail_bound, bits, X, err - abs(g) * L.tail_bound, True, m,
                      f"Lambda({m}) {stream.label}")


def ratio(chi: HeckeCharacterSpec, iota: int, m: int, tail=DEFAULT_TAIL, X: int | None = None,
          bits: int = DEFAULT_BITS, workers: int = 1) -> RatioResult:
    """``L(m, chi) / L(m+1, chi)`` with an interval-propagated error bound."""
    if X is None:
        lat = chi.base.lattice_constants()
        X = max(choose_X(chi.weight, m, tail, lattice=lat), choose_X(chi.weight, m + 1, tail, lattice=lat))
    A = completed(chi, iota, m, X=X, bits=bits, workers=workers)
    B = completed(chi, iota, m + 1, X=X, bits=bits, workers=workers)
    return ratio_of(A, B, m)


def ratio_of(A: EvalResult, B: EvalResult, m: int) -> RatioResult:
    with mp.workprec(A.precision_bits + 32):
        eA, eB = A.error_bound, B.error_bound
        if abs(B.value) <= eB:
            raise DenominatorIndistinguishableFromZero("the denominator interval contains 0")
        r = A.value / B.value
        err = (eA + abs(r) * eB) / (abs(B.value) - eB)
    return RatioResult(m, m + 1, r, err, A, B)
