"""Infinity types: purity, width, critical sets, CM types and Galois signatures.

An infinity type is an integer vector on the embeddings of F, in the order of
:func:`heckeratio.numfield.embeddings`.  Coefficient-field data enters only
through a reference embedding; changing it is a relabeling by a group element
of the Galois closure (``(g.n)_{g o tau} = n_tau``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import FiberMismatch, NotACMTypeAfterAction, NotPure, WindowViolated
from .numfield import (EmbeddingSet, GaloisContext, NumberFieldTower, Subfield, SubfieldData,
                       embeddings, galois_closure)


@dataclass(frozen=True)
class InfinityType:
    field: NumberFieldTower
    exponents: tuple[int, ...]
    parities: tuple[int, ...] | None = None  # epsilon_v per real place, in place order

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(x) for x in self.exponents))
        if len(self.exponents) != self.field.degree:
            raise ValueError(f"need {self.field.degree} exponents, got {len(self.exponents)}")
        if self.parities is not None:
            object.__setattr__(self, "parities", tuple(int(x) % 2 for x in self.parities))
            if len(self.parities) != self.emb.r1:
                raise ValueError("one parity bit per real place is required")

    @property
    def emb(self) -> EmbeddingSet:
        return embeddings(self.field)

    def __getitem__(self, tau: int) -> int:
        return self.exponents[tau]

    def __len__(self) -> int:
        return len(self.exponents)

    def __neg__(self) -> "InfinityType":
        return InfinityType(self.field, tuple(-x for x in self.exponents), self.parities)

    def shift(self, k: int) -> "InfinityType":
        """Tate twist: add ``k`` to every exponent."""
        return InfinityType(self.field, tuple(x + k for x in self.exponents), self.parities)

    def relabel(self, g: int, ctx: GaloisContext | None = None) -> "InfinityType":
        """The type seen through ``gamma_g o iota``: ``new_{g o tau} = n_tau``."""
        ctx = ctx or galois_closure(self.field)
        new = [0] * len(self)
        for tau, x in enumerate(self.exponents):
            new[ctx.act(g, tau)] = x
        return InfinityType(self.field, tuple(new), self.parities)

    def complementary(self) -> "InfinityType":
        """``n~_eta = n_{conj eta}``."""
        c = self.emb.conj
        return InfinityType(self.field, tuple(self.exponents[c[t]] for t in range(len(self))), self.parities)

    def real_parities(self) -> tuple[int, ...]:
        if self.parities is not None:
            return self.parities
        return tuple(self.exponents[p.indices[0]] % 2 for p in self.emb.places if p.kind == "real")

    def to_json(self) -> dict:
        return {"exponents": list(self.exponents), "parities": list(self.real_parities())}


@dataclass(frozen=True)
class PurityResult:
    pure: bool
    weight: int | None = None
    witness: tuple[int, int] | None = None  # (group element, embedding)


def purity_check(n: InfinityType, ctx: GaloisContext | None = None) -> PurityResult:
    ctx = ctx or galois_closure(n.field)
    emb = n.emb
    if emb.r1:
        w = n[0]
        bad = next((t for t in range(len(n)) if n[t] != w), None)
        return PurityResult(True, w) if bad is None else PurityResult(False, witness=(ctx.identity, bad))
    w = n[0] + n[emb.conj[0]]
    for g in ctx.elements():
        for tau in range(len(n)):
            if n[ctx.act(g, tau)] + n[ctx.act(g, emb.conj[tau])] != w:
                return PurityResult(False, witness=(g, tau))
    return PurityResult(True, w)


def _require_pure(n: InfinityType, ctx) -> int:
    res = purity_check(n, ctx)
    if not res.pure:
        raise NotPure(f"type {n.exponents} is not pure (witness {res.witness})")
    return res.weight


def _require_totally_imaginary(n: InfinityType) -> None:
    if n.emb.r1:
        raise ValueError("the field must be totally imaginary")


def width(n: InfinityType, ctx: GaloisContext | None = None) -> int:
    _require_pure(n, ctx)
    _require_totally_imaginary(n)
    return min(abs(n[p.indices[0]] - n[p.indices[1]]) for p in n.emb.places)


def is_base_change(n: InfinityType, sub: SubfieldData | Subfield) -> InfinityType:
    """Return ``m`` over F1 with ``n = m o restriction``, or raise :class:`FiberMismatch`."""
    f1 = sub.f1 if isinstance(sub, SubfieldData) else sub
    vals: dict[int, int] = {}
    for tau, x in enumerate(n.exponents):
        s = f1.restriction[tau]
        if vals.setdefault(s, x) != x:
            raise FiberMismatch(f"exponents are not constant on the fibre over embedding {s} of F1")
    return InfinityType(f1.tower, tuple(vals[s] for s in range(f1.degree)))


def base_change(m: InfinityType, sub: SubfieldData | Subfield) -> InfinityType:
    f1 = sub.f1 if isinstance(sub, SubfieldData) else sub
    return InfinityType(f1.parent, tuple(m[f1.restriction[t]] for t in range(f1.parent.degree)))


@dataclass(frozen=True)
class CriticalSet:
    kind: str  # "empty" | "interval" | "progression"
    center: Fraction
    lo: int | None = None
    hi: int | None = None
    weight: int | None = None  # progression data: shift -w and parity bit
    parity: int | None = None

    def __contains__(self, m: int) -> bool:
        if self.kind == "empty":
            return False
        if self.kind == "interval":
            return self.lo <= m <= self.hi
        x = m + self.weight
        if self.parity == 0:
            return (x >= 2 and x % 2 == 0) or (x <= -1 and x % 2 == 1)
        return (x <= 0 and x % 2 == 0) or (x >= 1 and x % 2 == 1)

    def __len__(self) -> int:
        if self.kind == "progression":
            raise TypeError("infinite critical set")
        return 0 if self.kind == "empty" else self.hi - self.lo + 1

    def members(self, lo: int | None = None, hi: int | None = None) -> list[int]:
        if self.kind == "empty":
            return []
        if self.kind == "interval":
            return list(range(self.lo, self.hi + 1))
        return [m for m in range(lo, hi + 1) if m in self]

    def to_json(self) -> dict:
        out = {"kind": self.kind, "center": str(self.center)}
        if self.kind == "interval":
            out.update(lo=self.lo, hi=self.hi, members=self.members())
        if self.kind == "progression":
            out.update(weight=self.weight, parity=self.parity,
                       sample=self.members(-self.weight - 8, -self.weight + 9))
        return out


def critical_set(t: InfinityType, ctx: GaloisContext | None = None) -> CriticalSet:
    """Critical integers of an analytic infinity type."""
    w = _require_pure(t, ctx)
    emb = t.emb
    center = Fraction(1 - w, 2)
    if emb.r1 and emb.r2:
        return CriticalSet("empty", center)
    if emb.r1:
        eps = set(t.real_parities())
        if len(eps) > 1:
            return CriticalSet("empty", center)
        return CriticalSet("progression", center, weight=w, parity=eps.pop())
    ell = width(t, ctx)
    if ell == 0:
        return CriticalSet("empty", center)
    lo = Fraction(1) - Fraction(w, 2) - Fraction(ell, 2)
    hi = -Fraction(w, 2) + Fraction(ell, 2)
    assert lo.denominator == 1 and hi.denominator == 1
    return CriticalSet("interval", center, int(lo), int(hi))


def _pole_data(t: InfinityType) -> tuple[list[int], list[int]]:
    """Shifts ``c`` with a Gamma_R(s + c) factor (real places) and Gamma_C(s + c) factors (complex)."""
    emb = t.emb
    par = iter(t.real_parities())
    real, cplx = [], []
    for p in emb.places:
        if p.kind == "real":
            real.append(t[p.indices[0]] + next(par))
        else:
            cplx.append(max(t[p.indices[0]], t[p.indices[1]]))  # (a+b)/2 + |a-b|/2 = max(a, b)
    return real, cplx


def _regular(data: tuple[list[int], list[int]], s: int) -> bool:
    real, cplx = data
    for c in real:
        x = s + c
        if x <= 0 and x % 2 == 0:
            return False
    return all(s + c > 0 for c in cplx)


def gamma_regular(t: InfinityType, s: int) -> bool:
    """Whether every archimedean Gamma factor of ``t`` is finite at the integer ``s``.

    Gamma_R(x) has poles at x in {0, -2, -4, ...}, Gamma_C(x) at x in {0, -1, ...}.
    """
    return _regular(_pole_data(t), s)


def critical_by_regularity(t: InfinityType, lo: int, hi: int) -> list[int]:
    """Integers in ``[lo, hi]`` where both ``L_inf(s, t)`` and ``L_inf(1-s, -t)`` are finite."""
    here, dual = _pole_data(t), _pole_data(-t)
    return [m for m in range(lo, hi + 1) if _regular(here, m) and _regular(dual, 1 - m)]


def analytic_type(chi, iota: int = 0, ctx: GaloisContext | None = None) -> InfinityType:
    """``-iota(n) + k`` for a character with algebraic type ``n`` and Tate twist ``k``.

    ``iota`` is a group element of the closure of the character's base field
    (0 is the reference embedding).
    """
    n = chi.infinity_type()
    if iota:
        n = n.relabel(iota, ctx)
    return (-n).shift(chi.tate)


def combinatorial_window(n: InfinityType, ctx: GaloisContext | None = None) -> bool:
    w = _require_pure(n, ctx)
    ell = width(n, ctx)
    return -ell <= w <= ell - 4


@dataclass(frozen=True)
class CMTypeData:
    phi: frozenset
    beta: dict
    phi_tilde: frozenset


def cm_type(n: InfinityType, ctx: GaloisContext | None = None) -> CMTypeData:
    if not combinatorial_window(n, ctx):
        raise WindowViolated(f"type {n.exponents} is outside the window -l <= w <= l-4")
    emb = n.emb
    phi = frozenset(t for t in range(len(n)) if n[t] <= -2)
    if len(phi) != emb.r2 or any(emb.conj[t] in phi for t in phi):
        raise WindowViolated("exponents do not single out one embedding per conjugate pair")
    return CMTypeData(phi, {t: emb.place_of[t] for t in sorted(phi)}, frozenset(emb.conj[t] for t in phi))


def _perm_sign(perm: Sequence[int]) -> int:
    seen, sign = set(), 1
    for start in range(len(perm)):
        if start in seen:
            continue
        j, length = start, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def place_permutation(n: InfinityType, sigma: int, ctx: GaloisContext | None = None,
                      tilde: bool = False) -> tuple[int, ...]:
    """``pi(sigma) = beta_{n, sigma iota} o (sigma o -) o beta_{n, iota}^{-1}`` on S_inf."""
    ctx = ctx or galois_closure(n.field)
    data = cm_type(n, ctx)
    phi = data.phi_tilde if tilde else data.phi
    emb = n.emb
    by_place = {emb.place_of[t]: t for t in phi}
    image = tuple(emb.place_of[ctx.act(sigma, by_place[k])] for k in range(len(emb.places)))
    if len(set(image)) != len(image):
        raise NotACMTypeAfterAction("the image of the CM type is not one embedding per place")
    return image


def signature(n: InfinityType, sigma: int, ctx: GaloisContext | None = None,
              place_order: Sequence[int] | None = None, tilde: bool = False) -> int:
    """``eps_{n,iota}(sigma)``: sign of the induced permutation of the places.

    ``place_order`` relabels S_inf (position -> place) before taking the sign;
    the result does not depend on it.
    """
    pi = place_permutation(n, sigma, ctx, tilde)
    if place_order is not None:
        pos = {p: k for k, p in enumerate(place_order)}
        pi = tuple(pos[pi[place_order[k]]] for k in range(len(pi)))
    return _perm_sign(pi)


def signature_product(n: InfinityType, sigma: int, ctx: GaloisContext | None = None) -> int:
    """``eps_{n,iota}(sigma) * eps_{n~,iota}(sigma)``."""
    return signature(n, sigma, ctx) * signature(n, sigma, ctx, tilde=True)


def parse_type(field: NumberFieldTower, text: str, parities: str | None = None) -> InfinityType:
    """Comma-separated exponent list in embedding order."""
    exps = tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    par = None if parities is None else tuple(int(x) for x in parities.split(",") if x)
    return InfinityType(field, exps, par)
