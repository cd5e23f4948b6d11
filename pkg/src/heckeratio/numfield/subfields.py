"""Subfields through the Galois correspondence: the maximal totally real F0 and CM F1."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .. import _linalg as la
from ..errors import NotTotallyNegative
from .embeddings import embeddings
from .galois import GaloisContext
from .tower import FieldElement, Layer, NumberFieldTower


@dataclass(frozen=True, eq=False)
class Subfield:
    """A subfield K of F presented as ``Q(u)`` with ``u`` an element of F."""

    parent: NumberFieldTower
    tower: NumberFieldTower
    generator: FieldElement
    subgroup: frozenset
    restriction: tuple[int, ...]  # Sigma_F -> Sigma_K

    @property
    def degree(self) -> int:
        return self.tower.degree

    @cached_property
    def _powers(self) -> list[FieldElement]:
        out, p = [], self.parent.one
        for _ in range(self.degree):
            out.append(p)
            p = p * self.generator
        return out

    def to_parent(self, x: FieldElement) -> FieldElement:
        coeffs = self.tower.to_power_basis(x) if self.degree > 1 else [x.coords[0]]
        acc = self.parent.zero
        for c, p in zip(coeffs, self._powers):
            acc = acc + p * c
        return acc

    def from_parent(self, x: FieldElement) -> FieldElement:
        cols = [p.coords for p in self._powers]
        rows = [[cols[j][i] for j in range(self.degree)] for i in range(self.parent.degree)]
        sol = la.solve_consistent(rows, x.coords)
        if sol is None:
            raise ValueError("element does not lie in the subfield")
        if self.degree == 1:
            return self.tower.from_rational(sol[0])
        return self.tower.from_power_basis(sol)

    @cached_property
    def real_root_count(self) -> int:
        return la.real_root_count(self.tower.minpoly) if self.degree > 1 else 1

    @property
    def totally_real(self) -> bool:
        return self.real_root_count == self.degree

    @property
    def totally_imaginary(self) -> bool:
        return self.real_root_count == 0


@dataclass(frozen=True, eq=False)
class SubfieldData:
    f0: Subfield
    f1: Subfield
    D: FieldElement | None  # element of f0.tower with F1 = F0(sqrt D); None when F1 = F0

    @property
    def restriction(self) -> tuple[int, ...]:
        return self.f1.restriction

    @property
    def is_cm(self) -> bool:
        return self.f1.degree == self.f1.parent.degree and self.D is not None


def _generated_subgroup(ctx: GaloisContext, gens) -> frozenset:
    H = {ctx.identity} | set(gens)
    frontier = list(H)
    while frontier:
        a = frontier.pop()
        for b in list(H):
            for c in (ctx.compose(a, b), ctx.compose(b, a)):
                if c not in H:
                    H.add(c)
                    frontier.append(c)
    return frozenset(H)


def intermediate_subgroups(ctx: GaloisContext) -> list[frozenset]:
    """All subgroups between the stabilizer of the reference F-embedding and the full group."""
    tau0 = ctx.restriction[0]
    S = frozenset(g for g in ctx.elements() if ctx.act(g, tau0) == tau0)
    seen = {S}
    todo = [S]
    while todo:
        H = todo.pop()
        for g in ctx.elements():
            if g in H:
                continue
            H2 = _generated_subgroup(ctx, H | {g})
            if H2 not in seen:
                seen.add(H2)
                todo.append(H2)
    return sorted(seen, key=lambda H: (-len(H), sorted(H)))


def fixed_subfield(F: NumberFieldTower, ctx: GaloisContext, H: frozenset, var: str = "u") -> Subfield:
    """Subfield of F fixed by ``H``, generated by an orbit sum."""
    index = ctx.order // len(H)
    if index == 1:
        K = NumberFieldTower(())
        return Subfield(F, K, F.one, H, tuple(0 for _ in range(F.degree)))
    L = ctx.closure
    theta = L.lift(F.theta)
    sums = []
    p = theta
    for _ in range(F.degree):
        acc = L.zero
        for g in sorted(H):
            acc = acc + ctx.apply(g, p)
        u = ctx.to_field(acc)
        if u is None:
            raise ArithmeticError("orbit sum left the field")
        sums.append(u)
        p = p * theta
    for cand in _candidates(sums):
        mp_ = la.squarefree_part(cand.charpoly())
        if len(mp_) - 1 == index:
            K = NumberFieldTower((Layer(var, tuple((c,) for c in mp_)),))
            emb_K = embeddings(K, ctx.emb_field.bits)
            restriction = tuple(
                emb_K.match(ctx.emb_field.evaluate(cand, tau)) for tau in range(F.degree))
            return Subfield(F, K, cand, H, restriction)
    raise ArithmeticError("no primitive orbit sum found")


def _candidates(sums):
    # single orbit sums first, then sum_j c^j * (orbit sum of theta^(j+1)) for small c
    yield from sums
    for c in range(1, 64):
        acc = sums[0]
        for j, s in enumerate(sums[1:], start=1):
            acc = acc + s * Fraction(c) ** j
        yield acc


@lru_cache(maxsize=32)
def maximal_subfields(F: NumberFieldTower, ctx: GaloisContext) -> SubfieldData:
    emb = ctx.emb_field
    if emb.r1 and emb.r2:
        raise ValueError("field must be totally real or totally imaginary")
    subs = [(H, fixed_subfield(F, ctx, H)) for H in intermediate_subgroups(ctx)]
    real = [(H, K) for H, K in subs if K.totally_real]
    H0, f0 = max(real, key=lambda t: t[1].degree)
    f1, D = f0, None
    for H, K in subs:
        if H <= H0 and len(H0) == 2 * len(H) and K.totally_imaginary:
            f1 = K
            break
    if f1 is not f0:
        f1 = Subfield(F, f1.tower, f1.generator, f1.subgroup, f1.restriction)
        gamma = next(g for g in H0 if g not in f1.subgroup)
        L = ctx.closure
        u = L.lift(f1.generator)
        delta = u - ctx.apply(gamma, u)
        D = f0.from_parent(ctx.to_field(delta * delta))
        f0 = Subfield(F, f0.tower, f0.generator, f0.subgroup, f0.restriction)
    return SubfieldData(f0, f1, D)


def is_totally_negative(D: FieldElement) -> bool:
    K = D.field
    if K.degree == 1:
        return D.coords[0] < 0
    emb = embeddings(K)
    if emb.r2:
        raise NotTotallyNegative("D must lie in a totally real field")
    return all(emb.evaluate(D, i).real < 0 for i in range(len(emb)))
