"""Galois closures realized as permutation groups of the closure's embeddings.

Convention: the group element with index ``g`` is the unique ``gamma`` with
``gamma o sigma_0 = sigma_g`` on the closure L, and it acts on the left,
``(gamma, sigma) -> gamma o sigma``.  Every ``gamma`` is realized exactly by
the automorphism ``theta_L -> h_g(theta_L)`` of L, with
``sigma_0(g(x)) = gamma(sigma_0(x))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from sympy import CRootOf, Poly, QQ

from .. import _linalg as la
from ..errors import ClosureTooLarge, SqrtNotInClosure
from .embeddings import DEFAULT_BITS, EmbeddingSet, embeddings
from .tower import CLOSURE_MAX_DEGREE, FieldElement, NumberFieldTower

EXACT_GROUP_CHECK_MAX = 16


def _sympy_domain(K: NumberFieldTower):
    if K.degree == 1:
        return QQ
    return QQ.algebraic_field(CRootOf(la.qpoly(K.minpoly).as_expr(), 0))


def factor_over(K: NumberFieldTower, coeffs: Sequence) -> list[list[FieldElement]]:
    """Factor a polynomial with coefficients in K (rational or K-elements) into monic irreducibles.

    Factors are returned low to high and are verified by exact re-multiplication.
    """
    dom = _sympy_domain(K)
    kcoeffs = [c if isinstance(c, FieldElement) else K.from_rational(c) for c in coeffs]

    def to_dom(x: FieldElement):
        pb = K.to_power_basis(x)
        if dom is QQ:
            return la.to_qq(pb[0])
        return dom.zero if not any(pb) else dom([la.to_qq(c) for c in reversed(pb)])

    def from_dom(a) -> FieldElement:
        if dom is QQ:
            return K.from_rational(la.to_fraction(a))
        return K.from_power_basis([la.to_fraction(c) for c in reversed(a.to_list())])

    p = Poly.from_list([to_dom(c) for c in reversed(kcoeffs)], la.X, domain=dom)
    _, facs = p.factor_list()
    out = []
    for q, mult in facs:
        cs = [from_dom(a) for a in reversed(q.rep.to_list())]
        lead = cs[-1]
        cs = [c / lead for c in cs]
        out.extend([cs] * mult)
    # exact certification: the monic factors multiply back to the monic input
    prod = [K.one]
    for f in out:
        prod = _poly_mul(prod, f)
    lead = kcoeffs[-1]
    if [c for c in prod] != [c / lead for c in kcoeffs]:
        raise ArithmeticError("factorization over the tower failed exact verification")
    return out


def _poly_mul(a, b):
    out = [a[0].field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _horner(coeffs: Sequence[Fraction], x: FieldElement) -> FieldElement:
    acc = x.field.zero
    for c in reversed(list(coeffs)):
        acc = acc * x + c
    return acc


@dataclass(frozen=True, eq=False)
class GaloisContext:
    field: NumberFieldTower
    closure: NumberFieldTower
    emb_closure: EmbeddingSet
    emb_field: EmbeddingSet
    perms: tuple[tuple[int, ...], ...]
    autos: tuple[tuple[Fraction, ...], ...]  # h_g in the power basis of theta_L
    restriction: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.perms)

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def _mult(self) -> tuple[tuple[int, ...], ...]:
        index = {p: g for g, p in enumerate(self.perms)}
        return tuple(tuple(index[tuple(self.perms[a][m] for m in self.perms[b])] for b in self.elements())
                     for a in self.elements())

    def compose(self, a: int, b: int) -> int:
        """Index of ``gamma_a o gamma_b``."""
        return self._mult[a][b]

    def inverse(self, a: int) -> int:
        return next(b for b in self.elements() if self._mult[a][b] == 0)

    @cached_property
    def _lift(self) -> tuple[int, ...]:
        out = {}
        for m, tau in enumerate(self.restriction):
            out.setdefault(tau, m)
        return tuple(out[t] for t in range(len(self.emb_field)))

    def act(self, g: int, tau: int) -> int:
        """``gamma_g o tau`` for an embedding ``tau`` of F."""
        return self.restriction[self.perms[g][self._lift[tau]]]

    def act_closure(self, g: int, m: int) -> int:
        return self.perms[g][m]

    @cached_property
    def complex_conjugation(self) -> int:
        target = self.emb_closure.conj
        return next(g for g, p in enumerate(self.perms) if p == target)

    @cached_property
    def _auto_powers(self) -> tuple[tuple[FieldElement, ...], ...]:
        L = self.closure
        out = []
        for h in self.autos:
            rho = L.from_power_basis(h)
            pw, p = [], L.one
            for _ in range(L.degree):
                pw.append(p)
                p = p * rho
            out.append(tuple(pw))
        return tuple(out)

    def apply(self, g: int, x: FieldElement) -> FieldElement:
        """Exact action of the automorphism attached to ``g`` on ``x`` in L."""
        L = self.closure
        if x.field != L:
            x = L.lift(x)
        acc = L.zero
        for c, p in zip(L.to_power_basis(x), self._auto_powers[g]):
            if c:
                acc = acc + p * c
        return acc

    def to_field(self, x: FieldElement) -> FieldElement | None:
        """View an element of L lying in F as an element of F."""
        return self.closure.restrict(x, len(self.field.layers))

    @cached_property
    def _sqrt_cache(self) -> dict:
        return {}

    def sqrt_in_closure(self, r) -> FieldElement:
        r = Fraction(r)
        if r in self._sqrt_cache:
            return self._sqrt_cache[r]
        L = self.closure
        facs = factor_over(L, [-r, 0, 1])
        lin = [f for f in facs if len(f) == 2]
        if not lin:
            raise SqrtNotInClosure(f"sqrt({r}) does not lie in the Galois closure")
        rho = -lin[0][0]
        assert rho * rho == L.from_rational(r)
        self._sqrt_cache[r] = rho
        return rho


@lru_cache(maxsize=32)
def galois_closure(F: NumberFieldTower, bits: int = DEFAULT_BITS) -> GaloisContext:
    fF = F.minpoly
    K = NumberFieldTower(F.layers, CLOSURE_MAX_DEGREE)
    n = 0
    while True:
        facs = factor_over(K, fF)
        nonlinear = [q for q in facs if len(q) > 2]
        if not nonlinear:
            break
        q = min(nonlinear, key=len)
        n += 1
        var = f"r{n}"
        while var in K.names:
            var += "_"
        if K.degree * (len(q) - 1) > CLOSURE_MAX_DEGREE:
            raise ClosureTooLarge(f"closure degree exceeds {CLOSURE_MAX_DEGREE}")
        K = K.adjoin(var, q)
    L = K
    emb_L = embeddings(L, bits)
    emb_F = embeddings(F, bits)
    D = L.degree

    autos: list = [None] * D
    for f in factor_over(L, L.minpoly):
        rho = -f[0]
        # exact certificate: rho is a root of the absolute minimal polynomial
        if not _horner(L.minpoly, rho).is_zero():
            raise ArithmeticError("automorphism image is not a root")
        h = tuple(L.to_power_basis(rho))
        g = emb_L.match(emb_L.evaluate_power(h, 0))
        autos[g] = h
    if any(a is None for a in autos):
        raise ArithmeticError("closure minimal polynomial did not split")
    perms = tuple(tuple(emb_L.match(emb_L.evaluate_power(autos[m], g)) for m in range(D)) for g in range(D))
    if len(set(perms)) != D:
        raise ArithmeticError("group elements are not distinct")

    thetaF = L.lift(F.theta)
    thF = L.to_power_basis(thetaF)
    restriction = tuple(emb_F.match(emb_L.evaluate_power(thF, m)) for m in range(D))
    ctx = GaloisContext(F, L, emb_L, emb_F, perms, tuple(autos), restriction)
    _check_group(ctx)
    return ctx


def _check_group(ctx: GaloisContext) -> None:
    perm_set = set(ctx.perms)
    for p in ctx.perms:
        for q in ctx.perms:
            if tuple(p[m] for m in q) not in perm_set:
                raise ArithmeticError("permutation set is not closed under composition")
    if ctx.closure.degree > EXACT_GROUP_CHECK_MAX:
        return
    # exact: g_a g_b (theta) = h_b(h_a(theta)) must equal h_{a o b}(theta)
    L = ctx.closure
    rhos = [L.from_power_basis(h) for h in ctx.autos]
    for a in ctx.elements():
        for b in ctx.elements():
            lhs = _horner(ctx.autos[b], rhos[a])
            if lhs != rhos[ctx.compose(a, b)]:
                raise ArithmeticError("numerical group law disagrees with exact composition")


def galois_action_on_sqrt(ctx: GaloisContext, g: int, r) -> int:
    """Sign by which ``gamma_g`` moves a square root of ``r`` inside the closure."""
    r = Fraction(r)
    num, den = r.numerator, r.denominator
    if r > 0 and _is_square(num) and _is_square(den):
        return 1
    rho = ctx.sqrt_in_closure(r)
    image = ctx.apply(g, rho)
    if image == rho:
        return 1
    if image == -rho:
        return -1
    raise ArithmeticError("automorphism does not map a square root to plus or minus itself")


def _is_square(n: int) -> bool:
    from math import isqrt

    return n >= 0 and isqrt(n) ** 2 == n
