"""Number fields presented as towers of monogenic extensions.

Elements are stored as exact rational coordinate vectors in the product basis
``t_1^e_1 * ... * t_k^e_k`` (``0 <= e_j < d_j``) with the first layer as the
least significant digit.  Multiplication goes through precomputed structure
constants, so every operation is exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import count
from typing import Iterable, Sequence

from .. import _linalg as la
from .._expr import evaluate, parse
from ..errors import DegreeOverLimit, ParseError, ReducibleLayer

MAX_DEGREE = 24
CLOSURE_MAX_DEGREE = 48


@dataclass(frozen=True)
class Layer:
    """One step ``t^d + c_{d-1} t^{d-1} + ... + c_0`` over the field below.

    ``coeffs`` holds ``c_0 .. c_{d-1}, 1`` (low to high) as flat coordinate
    tuples in the product basis of the field below.
    """

    var: str
    coeffs: tuple[tuple[Fraction, ...], ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True, eq=False)
class FieldElement:
    field: "NumberFieldTower"
    coords: tuple[Fraction, ...]

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise TypeError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field._mul(self.coords, other.coords))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = self.field.one, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        sol = la.solve(self.mul_matrix(), self.field.one.coords)
        return FieldElement(self.field, tuple(sol))

    # linear algebra over Q -----------------------------------------------------
    def mul_matrix(self) -> list[list[Fraction]]:
        """Matrix of multiplication by ``self``; column j is ``self * b_j``."""
        D = self.field.degree
        cols = [self.field._mul(self.coords, self.field.basis_coords(j)) for j in range(D)]
        return [[cols[j][i] for j in range(D)] for i in range(D)]

    def trace(self) -> Fraction:
        M = self.mul_matrix()
        return sum((M[i][i] for i in range(len(M))), Fraction(0))

    def norm(self) -> Fraction:
        return la.det(self.mul_matrix())

    def charpoly(self) -> list[Fraction]:
        return la.charpoly(self.mul_matrix())

    def minpoly(self) -> list[Fraction]:
        return la.squarefree_part(self.charpoly())

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    def __repr__(self):
        return f"FieldElement({self.field.format(self)})"


def _fr(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class NumberFieldTower:
    layers: tuple[Layer, ...] = ()
    max_degree: int = field(default=MAX_DEGREE, compare=False)

    def __hash__(self) -> int:
        # towers key many caches; hashing the Fraction coefficients every time dominates
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(self.layers)
            object.__setattr__(self, "_hash", h)
        return h

    # shape ---------------------------------------------------------------------
    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(L.degree for L in self.layers)

    @cached_property
    def degree(self) -> int:
        d = 1
        for e in self.degrees:
            d *= e
        return d

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(L.var for L in self.layers)

    def subtower(self, depth: int) -> "NumberFieldTower":
        return NumberFieldTower(self.layers[:depth], self.max_degree)

    def exponents(self, idx: int) -> tuple[int, ...]:
        out = []
        for d in self.degrees:
            idx, r = divmod(idx, d)
            out.append(r)
        return tuple(out)

    def index(self, exps: Sequence[int]) -> int:
        idx, mult = 0, 1
        for e, d in zip(exps, self.degrees):
            idx += e * mult
            mult *= d
        return idx

    # structure constants ------------------------------------------------------
    @cached_property
    def _nf_cache(self) -> dict:
        return {}

    def _normal_form(self, exps: tuple[int, ...]) -> dict[int, Fraction]:
        cache = self._nf_cache
        if exps in cache:
            return cache[exps]
        degs = self.degrees
        top = next((j for j in range(len(degs) - 1, -1, -1) if exps[j] >= degs[j]), None)
        if top is None:
            res = {self.index(exps): Fraction(1)}
        else:
            res: dict[int, Fraction] = {}
            layer = self.layers[top]
            below = self.subtower(top)
            for l, c in enumerate(layer.coeffs[:-1]):
                for i, ci in enumerate(c):
                    if not ci:
                        continue
                    low = below.exponents(i)
                    new = list(exps)
                    new[top] = exps[top] - layer.degree + l
                    for j in range(top):
                        new[j] += low[j]
                    for k, v in self._normal_form(tuple(new)).items():
                        res[k] = res.get(k, Fraction(0)) - ci * v
            res = {k: v for k, v in res.items() if v}
        cache[exps] = res
        return res

    @cached_property
    def _table(self) -> list[list[list[tuple[int, Fraction]]]]:
        D = self.degree
        exps = [self.exponents(i) for i in range(D)]
        table = [[None] * D for _ in range(D)]
        for a in range(D):
            for b in range(a, D):
                s = tuple(x + y for x, y in zip(exps[a], exps[b]))
                entry = sorted(self._normal_form(s).items())
                table[a][b] = table[b][a] = entry
        return table

    def _mul(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple[Fraction, ...]:
        D = self.degree
        out = [Fraction(0)] * D
        table = self._table
        ynz = [(b, yb) for b, yb in enumerate(y) if yb]
        for a, xa in enumerate(x):
            if not xa:
                continue
            row = table[a]
            for b, yb in ynz:
                p = xa * yb
                for k, v in row[b]:
                    out[k] += p * v
        return tuple(out)

    # constructors ---------------------------------------------------------------
    def element(self, coords: Iterable) -> FieldElement:
        coords = tuple(_fr(c) for c in coords)
        if len(coords) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(coords)}")
        return FieldElement(self, coords)

    def basis_coords(self, j: int) -> tuple[Fraction, ...]:
        v = [Fraction(0)] * self.degree
        v[j] = Fraction(1)
        return tuple(v)

    def basis(self) -> list[FieldElement]:
        return [FieldElement(self, self.basis_coords(j)) for j in range(self.degree)]

    def from_rational(self, q) -> FieldElement:
        v = [Fraction(0)] * self.degree
        v[0] = _fr(q)
        return FieldElement(self, tuple(v))

    @property
    def zero(self) -> FieldElement:
        return self.from_rational(0)

    @property
    def one(self) -> FieldElement:
        return self.from_rational(1)

    def gen(self, name_or_index) -> FieldElement:
        j = self.names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        exps = [0] * len(self.layers)
        if self.degrees[j] == 1:
            # degree-one layer: t_j equals minus its constant term
            below = self.subtower(j)
            c0 = FieldElement(below, self.layers[j].coeffs[0])
            return -self.lift(c0)
        exps[j] = 1
        return FieldElement(self, self.basis_coords(self.index(exps)))

    def lift(self, x: FieldElement) -> FieldElement:
        """Embed an element of a sub-tower (prefix of the layers)."""
        if x.field.layers != self.layers[: len(x.field.layers)]:
            raise ValueError("not a sub-tower")
        v = list(x.coords) + [Fraction(0)] * (self.degree - len(x.coords))
        return FieldElement(self, tuple(v))

    def restrict(self, x: FieldElement, depth: int) -> FieldElement | None:
        """Inverse of :meth:`lift`; ``None`` if ``x`` is not in the sub-tower."""
        sub = self.subtower(depth)
        n = sub.degree
        if any(x.coords[n:]):
            return None
        return FieldElement(sub, x.coords[:n])

    def parse_element(self, text: str) -> FieldElement:
        names = {n: self.gen(n) for n in self.names}
        return evaluate(parse(text), names, self.from_rational)

    def format(self, x: FieldElement) -> str:
        terms = []
        for i, c in enumerate(x.coords):
            if not c:
                continue
            mono = "*".join(
                (n if e == 1 else f"{n}^{e}") for n, e in zip(self.names, self.exponents(i)) if e
            )
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"({c})*{mono}")
        return " + ".join(terms) if terms else "0"

    # extension ------------------------------------------------------------------
    def adjoin(self, var: str, coeffs: Sequence[FieldElement]) -> "NumberFieldTower":
        """New tower with one more layer; ``coeffs`` monic, low to high."""
        if coeffs[-1] != self.one:
            raise ValueError("layer polynomial must be monic")
        layer = Layer(var, tuple(c.coords for c in coeffs))
        return NumberFieldTower(self.layers + (layer,), self.max_degree)

    # primitive element --------------------------------------------------------
    @cached_property
    def _primitive(self) -> tuple[FieldElement, tuple[Fraction, ...]]:
        k = len(self.layers)
        if self.degree == 1:
            return self.zero, (Fraction(0), Fraction(1))
        gens = [self.gen(j) for j in range(k)]
        for c in _small_ints():
            theta = self.zero
            for j in range(k):
                theta = theta + gens[j] * Fraction(c) ** (k - 1 - j)
            f = theta.charpoly()
            if la.is_squarefree(f):
                return theta, tuple(f)
            if abs(c) > 4 * self.degree + 8:
                break
        raise ReducibleLayer("tower algebra is not reduced; some layer has a repeated factor")

    @property
    def theta(self) -> FieldElement:
        """Primitive element ``t_k + c t_{k-1} + c^2 t_{k-2} + ...``."""
        return self._primitive[0]

    @property
    def minpoly(self) -> tuple[Fraction, ...]:
        """Absolute minimal polynomial of :attr:`theta`, low to high."""
        return self._primitive[1]

    @cached_property
    def _power_matrix(self) -> list[list[Fraction]]:
        D = self.degree
        cols, p = [], self.one
        for _ in range(D):
            cols.append(p.coords)
            p = p * self.theta
        return [[cols[j][i] for j in range(D)] for i in range(D)]

    @cached_property
    def _power_matrix_inv(self) -> list[list[Fraction]]:
        return la.inverse(self._power_matrix)

    def to_power_basis(self, x: FieldElement) -> list[Fraction]:
        """Coefficients ``c_j`` (low to high) with ``x = sum c_j theta^j``."""
        M = self._power_matrix_inv
        return [sum((M[i][j] * x.coords[j] for j in range(self.degree) if x.coords[j]), Fraction(0))
                for i in range(self.degree)]

    def from_power_basis(self, coeffs: Sequence) -> FieldElement:
        M = self._power_matrix
        D = self.degree
        coeffs = [_fr(c) for c in coeffs] + [Fraction(0)] * (D - len(coeffs))
        if len(coeffs) > D:
            raise ValueError("too many power-basis coefficients")
        return FieldElement(self, tuple(
            sum((M[i][j] * coeffs[j] for j in range(D) if coeffs[j]), Fraction(0)) for i in range(D)))

    def is_field(self) -> bool:
        return la.is_irreducible(self.minpoly)

    def to_json(self) -> dict:
        layers = []
        for j, L in enumerate(self.layers):
            below = self.subtower(j)
            terms = []
            for e, c in enumerate(L.coeffs):
                s = below.format(FieldElement(below, c))
                if s == "0":
                    continue
                mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
                terms.append(f"({s})*{mono}" if mono else f"({s})")
            layers.append({"var": L.var, "minpoly": " + ".join(terms)})
        return {"layers": layers}


def _small_ints():
    yield 0
    for n in count(1):
        yield n
        yield -n


class _KPoly:
    """Polynomials over a tower field, used only while parsing layers."""

    def __init__(self, field: NumberFieldTower, coeffs):
        self.field = field
        c = list(coeffs)
        while len(c) > 1 and c[-1].is_zero():
            c.pop()
        self.c = c

    def __add__(self, o):
        n = max(len(self.c), len(o.c))
        z = self.field.zero
        return _KPoly(self.field, [(self.c[i] if i < len(self.c) else z) + (o.c[i] if i < len(o.c) else z)
                                   for i in range(n)])

    def __neg__(self):
        return _KPoly(self.field, [-a for a in self.c])

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        out = [self.field.zero] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a.is_zero():
                continue
            for j, b in enumerate(o.c):
                out[i + j] = out[i + j] + a * b
        return _KPoly(self.field, out)


def parse_layer_poly(below: NumberFieldTower, text: str, var: str = "x") -> list[FieldElement]:
    """Parse a polynomial in ``var`` with coefficients in ``below``."""
    if var in below.names:
        raise ParseError(f"generator name {var!r} clashes with the polynomial variable")
    names = {n: _KPoly(below, [below.gen(n)]) for n in below.names}
    names[var] = _KPoly(below, [below.zero, below.one])
    p = evaluate(parse(text), names, lambda q: _KPoly(below, [below.from_rational(q)]))
    return p.c


def build_field(spec, max_degree: int = MAX_DEGREE) -> NumberFieldTower:
    """Build and validate a tower.

    ``spec`` is a JSON string, a dict ``{"layers": [{"var", "minpoly"}...]}``,
    or a list of ``(var, minpoly)`` pairs.
    """
    if isinstance(spec, str):
        spec = json.loads(spec)
    if isinstance(spec, dict):
        spec = [(L["var"], L["minpoly"]) for L in spec["layers"]]
    F = NumberFieldTower((), max_degree)
    for var, text in spec:
        if var == "x" or var in F.names:
            raise ParseError(f"invalid or repeated generator name {var!r}")
        coeffs = parse_layer_poly(F, text) if isinstance(text, str) else [F.element(c) for c in text]
        if len(coeffs) < 2:
            raise ParseError(f"layer {var!r} must have degree >= 1")
        if coeffs[-1] != F.one:
            raise ParseError(f"layer {var!r} polynomial must be monic")
        if F.degree * (len(coeffs) - 1) > max_degree:
            raise DegreeOverLimit(f"absolute degree {F.degree * (len(coeffs) - 1)} exceeds {max_degree}")
        F = F.adjoin(var, coeffs)
        if not F.is_field():
            raise ReducibleLayer(f"layer {var!r} is reducible over the field below")
    return F
