"""Smoothed approximate functional equation for quadratic-field characters.

Optional accelerated evaluator.  With ``u = s + shift``, ``K = |k| + 1`` and
``A = sqrt(N) / (2 pi)`` the completed function ``Lam(u) = A^u Gamma(u) L_raw(u)``
satisfies, for every ``t > 0``,

    Lam(u) = sum b_n (A/n)^u Gamma(u, n t / A)
             + eps sum conj(b_n) (A/n)^(K-u) Gamma(K-u, n / (t A)).

Neither the conductor ``N`` nor the root number ``eps`` is supplied: ``eps`` is
solved from two values of ``t`` and ``N`` is the unique divisor candidate for
which the solution has modulus one and is independent of ``t``.  Results are
numerical evidence, not proofs (``rigorous=False``).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath
import sympy
from mpmath import mp

from .chartypes import analytic_type, critical_set
from .errors import NotCritical, RootNumberNotFound
from .lseries import DEFAULT_BITS, EvalResult, RatioResult, linf_factor, ratio_of
from .qi import HeckeCharacterSpec, coefficients

T_VALUES = ("1", "1.15", "0.87")
SEARCH_BITS = 96


@dataclass(frozen=True)
class AFEData:
    N: int
    eps: mpmath.mpc
    K: int
    residual: mpmath.mpf
    candidates: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"conductor": self.N, "root_number_re": mpmath.nstr(self.eps.real, 20),
                "root_number_im": mpmath.nstr(self.eps.imag, 20), "K": self.K,
                "residual": mpmath.nstr(self.residual, 5), "candidates": list(self.candidates)}


def conductor_candidates(chi: HeckeCharacterSpec) -> list[int]:
    """Divisors of ``|d_F| N(m) N(4d)`` that are multiples of ``|d_F|``."""
    F = chi.base
    bound = 1
    if chi.twist_modulus is not None:
        bound *= F.norm(chi.twist_modulus)
    if chi.quad_d is not None and not chi.d_is_square:
        bound *= F.norm(F.mul((4, 0), chi.quad_d))
    return [abs(F.disc) * q for q in sympy.divisors(bound)]


def _n_max(N: int, K: int, u, t, bits: int) -> int:
    """First n beyond which both smoothed terms fall below 2^-bits (heuristic envelope)."""
    with mp.workprec(53):
        A = mpmath.sqrt(N) / (2 * mpmath.pi)
        sig = mpmath.re(u)
        target = mpmath.ldexp(1, -bits - 8)
        n = 1
        while True:
            env = 4 * mpmath.sqrt(n) * mpmath.mpf(n) ** ((K - 1) / 2)
            b1 = env * (A / n) ** sig * abs(mpmath.gammainc(sig, n * t / A))
            b2 = env * (A / n) ** (K - sig) * abs(mpmath.gammainc(K - sig, n / (t * A)))
            if max(b1, b2) * (A / min(t, 1 / t) + 1) < target and n * min(t, 1 / t) / A > K + 2:
                return n
            n = n + max(1, n // 8)


def _parts(b, N, K, u, t, n_max):
    A = mpmath.sqrt(N) / (2 * mpmath.pi)
    P = mpmath.mpc(0)
    Q = mpmath.mpc(0)
    for n in range(1, n_max + 1):
        if b[n] == 0:
            continue
        P += b[n] * (A / n) ** u * mpmath.gammainc(u, n * t / A)
        Q += mpmath.conj(b[n]) * (A / n) ** (K - u) * mpmath.gammainc(K - u, n / (t * A))
    return P, Q


def _coeffs(chi, iota, n_max):
    stream = coefficients(chi, n_max)
    theta = chi.base.theta_complex()
    if iota:
        theta = mpmath.conj(theta)
    return [stream.c0[n] + stream.c1[n] * theta for n in range(n_max + 1)]


def _solve_eps(chi, iota, N, K, u, bits):
    ts = [mpmath.mpf(x) for x in T_VALUES]
    n_max = max(_n_max(N, K, u, t, bits) for t in ts)
    b = _coeffs(chi, iota, n_max)
    (P1, Q1), (P2, Q2), (P3, Q3) = (_parts(b, N, K, u, t, n_max) for t in ts)
    if Q1 == Q2:
        return None, mpmath.inf
    eps = (P2 - P1) / (Q1 - Q2)
    lam = P1 + eps * Q1
    resid = abs(P3 + eps * Q3 - lam) / max(abs(lam), mpmath.ldexp(1, -bits))
    return eps, max(resid, abs(abs(eps) - 1))


@lru_cache(maxsize=64)
def afe_data(chi: HeckeCharacterSpec, iota: int = 0, bits: int = DEFAULT_BITS) -> AFEData:
    """Numerically determine the conductor and root number of ``iota o chi``."""
    K = abs(chi.k) + 1
    u0 = mpmath.mpf(K) / 2 + mpmath.mpf(1) / 3
    cands = conductor_candidates(chi)
    good = []
    with mp.workprec(SEARCH_BITS + 32):
        for N in cands:
            eps, resid = _solve_eps(chi, iota, N, K, u0, SEARCH_BITS)
            if resid < mpmath.ldexp(1, -SEARCH_BITS // 2):
                good.append(N)
    if len(good) != 1:
        raise RootNumberNotFound(f"{len(good)} conductor candidates among {cands} satisfy the functional equation")
    N = good[0]
    with mp.workprec(bits + 64):
        eps, resid = _solve_eps(chi, iota, N, K, u0, bits)
    if resid > mpmath.ldexp(1, -bits // 2):
        raise RootNumberNotFound(f"root number for N={N} is unstable at {bits} bits (residual {resid})")
    return AFEData(N, eps, K, resid, tuple(cands))


def afe_lfinite(chi: HeckeCharacterSpec, s, iota: int = 0, bits: int = DEFAULT_BITS,
                data: AFEData | None = None) -> EvalResult:
    """``L_f(s, iota o chi)`` for any ``s`` (no convergence restriction)."""
    data = data or afe_data(chi, iota, bits)
    with mp.workprec(bits + 64):
        u = mpmath.mpmathify(s) + chi.raw_shift
        t = mpmath.mpf(1)
        n_max = _n_max(data.N, data.K, u, t, bits)
        b = _coeffs(chi, iota, n_max)
        P, Q = _parts(b, data.N, data.K, u, t, n_max)
        A = mpmath.sqrt(data.N) / (2 * mpmath.pi)
        val = (P + data.eps * Q) / (A ** u * mpmath.gamma(u))
        # the root number is known to within the residual; propagate that and the cut-off
        err = abs(data.eps - data.eps / abs(data.eps)) * abs(Q / (A ** u * mpmath.gamma(u))) \
            + data.residual * abs(val) + abs(val) * mpmath.ldexp(1, -bits)
    return EvalResult(mpmath.mpc(val), err, bits, n_max, mpmath.mpf(0), False, s,
                      f"afe N={data.N} {chi.field} k={chi.k}")


def afe_completed(chi: HeckeCharacterSpec, iota: int, m: int, bits: int = DEFAULT_BITS) -> EvalResult:
    """``L(m, chi)`` at a critical ``m`` via the approximate functional equation."""
    with mp.workprec(bits + 32):
        g = _check_point_afe(chi, iota, m)
        L = afe_lfinite(chi, m, iota, bits)
        val = g * L.value
    return EvalResult(val, abs(g) * L.error_bound, bits, L.X, mpmath.mpf(0), False, m, f"Lambda({m}) {L.label}")


def _check_point_afe(chi, iota, m):
    t = analytic_type(chi, iota)
    g = linf_factor(t, m)
    if m not in critical_set(t):
        raise NotCritical(f"m = {m} is not critical for the analytic type {t.exponents}")
    return g


def afe_ratio(chi: HeckeCharacterSpec, iota: int, m: int, bits: int = DEFAULT_BITS) -> RatioResult:
    return ratio_of(afe_completed(chi, iota, m, bits), afe_completed(chi, iota, m + 1, bits), m)


__all__ = ["AFEData", "afe_completed", "afe_data", "afe_lfinite", "afe_ratio", "conductor_candidates"]
