"""Exact rational linear algebra on top of sympy's DomainMatrix over QQ."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import Poly, QQ, symbols
from sympy.polys.matrices import DomainMatrix

X = symbols("x")


def to_qq(v) -> object:
    v = Fraction(v)
    return QQ(v.numerator, v.denominator)


def to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def dm(rows: Sequence[Sequence]) -> DomainMatrix:
    rows = [[to_qq(v) for v in row] for row in rows]
    n = len(rows)
    m = len(rows[0]) if n else 0
    return DomainMatrix(rows, (n, m), QQ)


def from_dm(M: DomainMatrix) -> list[list[Fraction]]:
    return [[to_fraction(v) for v in row] for row in M.to_list()]


def det(rows) -> Fraction:
    return to_fraction(dm(rows).det())


def charpoly(rows) -> list[Fraction]:
    """Characteristic polynomial, coefficients low -> high (monic)."""
    return [to_fraction(c) for c in reversed(dm(rows).charpoly())]


def inverse(rows) -> list[list[Fraction]]:
    return from_dm(dm(rows).inv())


def rank(rows) -> int:
    return dm(rows).rank()


def solve(rows, rhs: Sequence) -> list[Fraction]:
    """Solve ``rows @ y = rhs`` for square nonsingular ``rows``."""
    A = dm(rows)
    b = dm([[v] for v in rhs])
    y = A.lu_solve(b)
    return [to_fraction(r[0]) for r in y.to_list()]


def qpoly(coeffs_low_high: Sequence) -> Poly:
    return Poly([to_qq(c) for c in reversed(list(coeffs_low_high))], X, domain=QQ)


def poly_coeffs(p: Poly) -> list[Fraction]:
    return [to_fraction(c) for c in reversed(p.all_coeffs())]


def is_squarefree(coeffs_low_high) -> bool:
    p = qpoly(coeffs_low_high)
    return p.gcd(p.diff(X)).degree() == 0


def is_irreducible(coeffs_low_high) -> bool:
    return qpoly(coeffs_low_high).is_irreducible


def real_root_count(coeffs_low_high) -> int:
    """Exact number of distinct real roots (Sturm sequences)."""
    return qpoly(coeffs_low_high).count_roots()


def squarefree_part(coeffs_low_high) -> list[Fraction]:
    p = qpoly(coeffs_low_high)
    q = p.quo(p.gcd(p.diff(X)))
    return poly_coeffs(q.monic())


def solve_consistent(rows, rhs) -> list[Fraction] | None:
    """Solve a possibly non-square system ``rows @ y = rhs``; ``None`` if inconsistent.

    Assumes the columns of ``rows`` are independent.
    """
    n = len(rows[0])
    aug = dm([list(r) + [b] for r, b in zip(rows, rhs)])
    R, pivots = aug.rref()
    if n in pivots:
        return None
    R = from_dm(R)
    y = [Fraction(0)] * n
    for row_i, col in enumerate(pivots):
        y[col] = R[row_i][n]
    return y
