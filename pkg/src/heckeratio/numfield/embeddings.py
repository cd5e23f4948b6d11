"""Numerical complex embeddings of a tower with certified separation."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

import mpmath
from mpmath import mp

from .. import _linalg as la
from ..errors import PrecisionExhausted
from .tower import FieldElement, NumberFieldTower

DEFAULT_BITS = 192
MAX_DOUBLINGS = 8


@dataclass(frozen=True)
class Place:
    kind: str  # "real" or "complex"
    indices: tuple[int, ...]  # (tau,) or (tau, conj tau), representative first


@dataclass(frozen=True, eq=False)
class EmbeddingSet:
    field: NumberFieldTower
    bits: int
    theta_values: tuple  # image of the primitive element, one per embedding
    gen_values: tuple  # images of the layer generators, one tuple per embedding
    conj: tuple[int, ...]
    places: tuple[Place, ...]

    def __len__(self) -> int:
        return len(self.theta_values)

    @property
    def r1(self) -> int:
        return sum(1 for p in self.places if p.kind == "real")

    @property
    def r2(self) -> int:
        return sum(1 for p in self.places if p.kind == "complex")

    @cached_property
    def place_of(self) -> tuple[int, ...]:
        out = [0] * len(self)
        for k, p in enumerate(self.places):
            for i in p.indices:
                out[i] = k
        return tuple(out)

    def is_real(self, i: int) -> bool:
        return self.conj[i] == i

    @property
    def tolerance(self):
        return mpmath.mpf(2) ** (-(self.bits // 2))

    def evaluate(self, x: FieldElement, i: int):
        """Complex value of ``x`` under the ``i``-th embedding."""
        return self.evaluate_power(self.field.to_power_basis(x), i)

    def evaluate_power(self, coeffs: Sequence[Fraction], i: int):
        with mp.workprec(self.bits + 16):
            th = self.theta_values[i]
            acc = mpmath.mpc(0)
            for c in reversed(list(coeffs)):
                acc = acc * th + mpmath.mpf(c.numerator) / c.denominator
            return acc

    def match(self, z, values=None) -> int:
        """Index of the unique embedding whose theta image is within tolerance of ``z``."""
        values = self.theta_values if values is None else values
        return _unique_match(z, values, self.tolerance)


def _unique_match(z, values, tol) -> int:
    d = [abs(v - z) for v in values]
    best = min(range(len(d)), key=d.__getitem__)
    if d[best] > tol or sum(1 for x in d if x <= tol) != 1:
        raise PrecisionExhausted("embedding match is not unique at the current precision")
    return best


def _polish(coeffs_hl, r, steps=3):
    # Newton refinement in the ambient precision
    for _ in range(steps):
        f = mpmath.polyval(coeffs_hl, r, derivative=True)
        if f[1] == 0:
            break
        r = r - f[0] / f[1]
    return r


def _roots(minpoly: Sequence[Fraction], prec: int):
    coeffs_hl = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(minpoly)]
    if len(coeffs_hl) == 2:
        return [mpmath.mpc(-coeffs_hl[1] / coeffs_hl[0])], mpmath.mpf(0)
    roots, err = mpmath.polyroots(coeffs_hl, maxsteps=400, extraprec=prec, error=True)
    roots = [_polish(coeffs_hl, mpmath.mpc(r)) for r in roots]
    return roots, err


@lru_cache(maxsize=64)
def embeddings(F: NumberFieldTower, bits: int = DEFAULT_BITS) -> EmbeddingSet:
    if bits < 64:
        raise ValueError("bits must be at least 64")
    f = F.minpoly
    r1 = la.real_root_count(f)
    D = F.degree
    prec = bits
    for _ in range(MAX_DOUBLINGS + 1):
        with mp.workprec(prec + 32):
            try:
                roots, err = _roots(f, prec)
            except mpmath.libmp.NoConvergence:
                prec *= 2
                continue
            tol = mpmath.mpf(2) ** (-(prec // 2))
            sep = min((abs(a - b) for k, a in enumerate(roots) for b in roots[k + 1:]), default=mpmath.inf)
            if sep > tol and err < sep / 8:
                result = _assemble(F, roots, r1, prec, tol)
                if result is not None:
                    return result
        prec *= 2
    raise PrecisionExhausted(f"roots not separated after {MAX_DOUBLINGS} doublings (last {prec} bits)")


def _assemble(F, roots, r1, prec, tol):
    by_im = sorted(range(len(roots)), key=lambda k: abs(roots[k].imag))
    real_idx = by_im[:r1]
    if any(abs(roots[k].imag) > tol for k in real_idx):
        return None
    if any(abs(roots[k].imag) <= tol for k in by_im[r1:]):
        return None
    reals = sorted((mpmath.mpc(roots[k].real, 0) for k in real_idx), key=lambda z: z.real)
    upper = sorted((roots[k] for k in by_im[r1:] if roots[k].imag > 0), key=lambda z: (z.real, z.imag))
    lower = [roots[k] for k in by_im[r1:] if roots[k].imag < 0]
    if len(upper) != len(lower):
        return None
    thetas = list(reals)
    conj = list(range(len(reals)))
    places = [Place("real", (k,)) for k in range(len(reals))]
    used = set()
    for z in upper:
        j = _unique_match(mpmath.conj(z), lower, tol)
        if j in used:
            return None
        used.add(j)
        a = len(thetas)
        thetas += [z, lower[j]]
        conj += [a + 1, a]
        places.append(Place("complex", (a, a + 1)))
    gens = []
    gen_coeffs = [F.to_power_basis(F.gen(j)) for j in range(len(F.layers))]
    for th in thetas:
        row = []
        for c in gen_coeffs:
            acc = mpmath.mpc(0)
            for q in reversed(c):
                acc = acc * th + mpmath.mpf(q.numerator) / q.denominator
            row.append(acc)
        gens.append(tuple(row))
    return EmbeddingSet(F, prec, tuple(thetas), tuple(gens), tuple(conj), tuple(places))
