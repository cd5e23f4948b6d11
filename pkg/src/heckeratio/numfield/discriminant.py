"""Basis-dependent discriminants ``det[Tr(w_i w_j)]`` and the surd Delta_F."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import NotABasis, NotTotallyNegative
from .subfields import is_totally_negative
from .surd import SurdValue
from .tower import FieldElement, NumberFieldTower


def _depth_of(F: NumberFieldTower, K) -> int:
    if isinstance(K, int):
        return K
    n = len(K.layers)
    if F.layers[:n] != K.layers:
        raise ValueError("K must be a sub-tower (prefix of the layers) of F")
    return n


def relative_basis(F: NumberFieldTower, K) -> list[FieldElement]:
    """Monomials in the generators above K: the product basis of F over K."""
    depth = _depth_of(F, K)
    dK = F.subtower(depth).degree
    return [FieldElement(F, F.basis_coords(e * dK)) for e in range(F.degree // dK)]


def rel_trace(F: NumberFieldTower, K, x: FieldElement) -> FieldElement:
    """``Tr_{F/K}(x)`` as an element of the sub-tower K."""
    depth = _depth_of(F, K)
    sub = F.subtower(depth)
    dK = sub.degree
    acc = [Fraction(0)] * dK
    for e, u in enumerate(relative_basis(F, depth)):
        block = (x * u).coords[e * dK:(e + 1) * dK]
        acc = [a + b for a, b in zip(acc, block)]
    return FieldElement(sub, tuple(acc))


def _det(M: list[list[FieldElement]]) -> FieldElement:
    # Gaussian elimination over the field K
    M = [row[:] for row in M]
    n = len(M)
    K = M[0][0].field
    det = K.one
    for c in range(n):
        piv = next((r for r in range(c, n) if not M[r][c].is_zero()), None)
        if piv is None:
            return K.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c]
        inv = M[c][c].inverse()
        for r in range(c + 1, n):
            if M[r][c].is_zero():
                continue
            f = M[r][c] * inv
            M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def rel_discriminant(F: NumberFieldTower, K, basis: Sequence[FieldElement] | None = None) -> FieldElement:
    """``det[Tr_{F/K}(w_i w_j)]`` for a K-basis ``w`` of F (default: the product basis)."""
    depth = _depth_of(F, K)
    basis = relative_basis(F, depth) if basis is None else list(basis)
    n = F.degree // F.subtower(depth).degree
    if len(basis) != n or any(w.field != F for w in basis):
        raise NotABasis(f"need {n} elements of F, got {len(basis)}")
    gram = [[rel_trace(F, depth, a * b) for b in basis] for a in basis]
    d = _det(gram)
    if d.is_zero():
        raise NotABasis("elements are linearly dependent over K")
    return d


def abs_discriminant_tower(F: NumberFieldTower, K, basis_FK=None, basis_K=None) -> Fraction:
    """``delta_{F/Q} = delta_{K/Q}^{[F:K]} * N_{K/Q}(delta_{F/K})``."""
    depth = _depth_of(F, K)
    sub = F.subtower(depth)
    dK = rel_discriminant(sub, 0, basis_K).coords[0]
    dFK = rel_discriminant(F, depth, basis_FK)
    return dK ** (F.degree // sub.degree) * dFK.norm()


def abs_discriminant(F: NumberFieldTower, basis: Sequence[FieldElement] | None = None) -> Fraction:
    """``delta_{F/Q}`` computed directly (default: the tower product basis)."""
    return rel_discriminant(F, 0, basis).coords[0]


def delta_F(F_degree: int, F0: NumberFieldTower, F1: NumberFieldTower, D=None) -> SurdValue:
    """``Delta_F = Delta_{F1}^{[F:F1]}`` with ``Delta_{F1} = sqrt(N_{F0/Q}(D))``.

    ``F_degree`` may be an int or the field F itself; ``D`` is an element of F0
    (or a rational when F0 = Q).  With F1 = F0 the unit surd is returned.
    """
    dF = F_degree.degree if isinstance(F_degree, NumberFieldTower) else int(F_degree)
    if F1.degree == F0.degree:
        return SurdValue.one()
    if D is None:
        raise ValueError("D is required when F1 is a proper extension of F0")
    if not isinstance(D, FieldElement):
        D = F0.from_rational(D)
    if not is_totally_negative(D):
        raise NotTotallyNegative("D must be negative under every real embedding of F0")
    if F1.degree != 2 * F0.degree:
        raise ValueError("F1 must be quadratic over F0")
    N = D.norm() if F0.degree > 1 else D.coords[0]
    return SurdValue.sqrt(N) ** (dF // F1.degree)
