"""Rational recognition, the ratio-rationality pipeline and identity checks."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mp

from . import __version__
from .chartypes import InfinityType, signature
from .lseries import DEFAULT_BITS, DEFAULT_TAIL, RatioResult, ratio
from .numfield import (CM_DATA, FIELDS, NumberFieldTower, SurdValue, abs_discriminant, build_field,
                       delta_F, embeddings, galois_action_on_sqrt, galois_closure, get_field, maximal_subfields,
                       rel_discriminant, squarefree_decomposition)
from .qi import HeckeCharacterSpec


class RecognitionWarning(UserWarning):
    """Tolerance too loose for the q-bound: a recognized fraction need not be unique."""


@dataclass(frozen=True)
class RecognitionResult:
    recognized: bool
    fraction: Fraction | None
    residual: mpmath.mpf | None
    q_bound: int
    tolerance: float
    sound: bool

    def to_json(self) -> dict:
        return {"recognized": self.recognized, "fraction": None if self.fraction is None else str(self.fraction),
                "residual": None if self.residual is None else mpmath.nstr(self.residual, 6),
                "q_bound": self.q_bound, "tolerance": self.tolerance, "sound": self.sound}


def _exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)  # exact for floats; an existing mpf keeps its own precision
    if not mpmath.isfinite(x):
        raise ValueError(f"cannot convert {x} to a fraction")
    # read the raw (sign, mantissa, exponent) triple: man_exp drops the sign under gmpy
    sign, man, exp, _ = x._mpf_
    v = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -v if sign else v


def soundness_ok(q_bound: int, tolerance) -> bool:
    return _exact(tolerance) < Fraction(1, 2 * q_bound * q_bound)


def recognize_rational(x, q_bound: int, tolerance) -> RecognitionResult:
    """First continued-fraction convergent ``p/q`` with ``q <= q_bound`` and ``|x - p/q| <= tolerance``."""
    sound = soundness_ok(q_bound, tolerance)
    if not sound:
        warnings.warn(f"tolerance {tolerance} >= 1/(2 q^2) for q-bound {q_bound}", RecognitionWarning, stacklevel=2)
    xf = _exact(x)
    tol = _exact(tolerance)
    h0, h1, k0, k1 = 0, 1, 1, 0
    rest = xf
    while True:
        a = rest.numerator // rest.denominator
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if k1 > q_bound:
            break
        conv = Fraction(h1, k1)
        res = abs(xf - conv)
        if res <= tol:
            return RecognitionResult(True, conv, mpmath.mpf(res.numerator) / res.denominator, q_bound, tolerance,
                                     sound)
        frac = rest - a
        if frac == 0:
            break
        rest = 1 / frac
    return RecognitionResult(False, None, None, q_bound, tolerance, sound)


@dataclass(frozen=True)
class GaussianRecognition:
    real: RecognitionResult
    imag: RecognitionResult

    @property
    def recognized(self) -> bool:
        return self.real.recognized and self.imag.recognized

    def to_json(self) -> dict:
        return {"recognized": self.recognized, "real": self.real.to_json(), "imag": self.imag.to_json()}


def recognize_gaussian(z, q_bound: int, tolerance) -> GaussianRecognition:
    """Componentwise recognition of an element of Q(i)."""
    if not isinstance(z, mpmath.mpc):
        z = mpmath.mpc(z)
    return GaussianRecognition(recognize_rational(z.real, q_bound, tolerance),
                               recognize_rational(z.imag, q_bound, tolerance))


# the ratio pipeline -----------------------------------------------------------------------

@dataclass(frozen=True)
class CounterexampleReport:
    r_psi: RatioResult
    r_psi_omega: RatioResult
    r_chi: RatioResult
    real_within_error: bool
    recognition: RecognitionResult
    recognition_sqrt: RecognitionResult
    sqrt_factor: int
    verdict: str
    params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"version": __version__, "params": self.params, "verdict": self.verdict,
                "R_psi": self.r_psi.to_json(), "R_psi_omega": self.r_psi_omega.to_json(),
                "R_chi": self.r_chi.to_json(), "real_within_error": self.real_within_error,
                "sqrt_factor": self.sqrt_factor, "recognition": self.recognition.to_json(),
                "recognition_sqrt": self.recognition_sqrt.to_json()}


VERDICT_REPRODUCED = "counterexample-reproduced"


def _verdict(real: bool, rec: RecognitionResult, rec_sqrt: RecognitionResult, factor: int) -> str:
    if not real:
        return "not-real"
    if factor == 1:
        return "consistent" if rec.recognized and rec_sqrt.recognized else "inconclusive"
    if rec.recognized and not rec_sqrt.recognized:
        return VERDICT_REPRODUCED
    return "inconclusive"


def counterexample_pipeline(psi: HeckeCharacterSpec | None = None, d: str = "4+i", m: int = 7,
                            q_bound: int = 10 ** 4, tolerance=5e-8, tail=DEFAULT_TAIL,
                            bits: int = DEFAULT_BITS, workers: int = 1, X: int | None = None,
                            route: str = "dirichlet") -> CounterexampleReport:
    """``R_chi = R_psi * R_{psi omega}`` at ``(m, m+1)`` and the rationality asymmetry test.

    ``route`` is ``"dirichlet"`` (rigorous truncated sums) or ``"afe"``
    (approximate functional equation, numerical root number).
    """
    psi = psi or HeckeCharacterSpec("Q(i)", 8)
    chi_w = psi.with_quad(d)
    if route == "dirichlet":
        r1 = ratio(psi, 0, m, tail=tail, X=X, bits=bits, workers=workers)
        r2 = ratio(chi_w, 0, m, tail=tail, X=X, bits=bits, workers=workers)
    elif route == "afe":
        from .afe import afe_ratio
        r1 = afe_ratio(psi, 0, m, bits)
        r2 = afe_ratio(chi_w, 0, m, bits)
    else:
        raise ValueError(f"unknown route {route!r}")
    rc = r1 * r2
    F = psi.base
    factor = 1 if chi_w.d_is_square else F.norm(chi_w.quad_d)
    with mp.workprec(bits + 32):
        real = abs(rc.ratio.imag) <= rc.error_bound
        x = rc.ratio.real
        rec = recognize_rational(x, q_bound, tolerance)
        rec_sqrt = recognize_rational(mpmath.sqrt(factor) * x, q_bound, tolerance)
    params = {"field": psi.field, "k": psi.k, "tate": psi.tate, "d": str(d), "m": m, "q_bound": q_bound,
              "tolerance": tolerance, "tail": tail, "bits": bits, "workers": workers, "route": route,
              "X": None if r1.numerator is None else r1.numerator.X}
    return CounterexampleReport(r1, r2, rc, bool(real), rec, rec_sqrt, factor,
                                _verdict(bool(real), rec, rec_sqrt, factor), params)


# discriminant identities -------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityCheck:
    field: str
    lemma: str  # "CM" | "totally-imaginary" | "not-applicable"
    lhs: SurdValue | None
    rhs: SurdValue | None
    delta_F: SurdValue | None
    norm_rel_disc: Fraction | None
    passed: bool

    def to_json(self) -> dict:
        return {"field": self.field, "lemma": self.lemma, "passed": self.passed,
                "lhs": None if self.lhs is None else self.lhs.to_json(),
                "rhs": None if self.rhs is None else self.rhs.to_json(),
                "Delta_F": None if self.delta_F is None else self.delta_F.to_json(),
                "norm_rel_disc": None if self.norm_rel_disc is None else str(self.norm_rel_disc)}


@dataclass(frozen=True)
class CMStructure:
    """F0, F1 and D for a field, with ``N_{F1/Q}(delta_{F/F1})`` up to squares."""
    F: NumberFieldTower
    F0: NumberFieldTower
    F1: NumberFieldTower
    D: object
    norm_rel_disc: Fraction

    @property
    def is_cm(self) -> bool:
        return self.F1.degree == self.F.degree

    @property
    def delta(self) -> SurdValue:
        return delta_F(self.F, self.F0, self.F1, self.D)


def cm_structure(F: NumberFieldTower | str) -> CMStructure:
    """Catalog entries with a sub-tower F1 use exact relative discriminants; others use the closure."""
    name = F if isinstance(F, str) else None
    F = get_field(F) if isinstance(F, str) else F
    if name is None:
        name = next((k for k, v in FIELDS.items() if build_field(v) == F), None)
    if name in CM_DATA:
        depth, D = CM_DATA[name]
        F1 = F.subtower(depth)
        nrd = Fraction(1) if depth == len(F.layers) else rel_discriminant(F, depth).norm()
        return CMStructure(F, F.subtower(0), F1, D, nrd)
    ctx = galois_closure(F)
    sub = maximal_subfields(F, ctx)
    f1 = sub.f1.tower
    if f1.degree == F.degree:
        nrd = Fraction(1)
    else:
        # delta_F = delta_{F1}^[F:F1] * N(delta_{F/F1}) up to squares
        nrd = abs_discriminant(F) / abs_discriminant(f1) ** (F.degree // f1.degree)
    return CMStructure(F, sub.f0.tower, f1, sub.D, nrd)


def discriminant_identity_check(F: NumberFieldTower | str) -> IdentityCheck:
    """``|delta_F|^(1/2) = i^(d/2) Delta_F [N(delta_{F/F1})^(1/2)]`` modulo Q^x."""
    label = F if isinstance(F, str) else str(F.names)
    F = get_field(F) if isinstance(F, str) else F
    if embeddings(F).r1:
        return IdentityCheck(label, "not-applicable", None, None, None, None, False)
    st = cm_structure(F)
    dF = abs_discriminant(F)
    lhs = SurdValue.sqrt(abs(dF))
    Delta = st.delta
    rhs = SurdValue(F.degree // 2) * Delta
    lemma = "CM"
    if not st.is_cm:
        lemma = "totally-imaginary"
        rhs = rhs * SurdValue.sqrt(st.norm_rel_disc)
    return IdentityCheck(label, lemma, lhs, rhs, Delta, st.norm_rel_disc, lhs.equal_mod_rationals(rhs))


# reciprocity table ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReciprocityRow:
    element: int
    eps_n: int
    eps_tilde: int
    product: int
    sqrt_sign: int

    @property
    def agrees(self) -> bool:
        return self.product == self.sqrt_sign


@dataclass(frozen=True)
class ReciprocityTable:
    radicand: int
    rows: tuple[ReciprocityRow, ...]

    @property
    def passed(self) -> bool:
        return all(r.agrees for r in self.rows)

    @property
    def has_minus_one(self) -> bool:
        return any(r.product == -1 for r in self.rows)

    def to_json(self) -> dict:
        return {"radicand": self.radicand, "passed": self.passed, "has_minus_one": self.has_minus_one,
                "rows": [{"element": r.element, "eps_n": r.eps_n, "eps_tilde": r.eps_tilde,
                          "product": r.product, "sqrt_sign": r.sqrt_sign} for r in self.rows]}


def reciprocity_table(n: InfinityType, structure: CMStructure | None = None) -> ReciprocityTable:
    """Signature product against the action on ``sqrt(N_{F1/Q}(delta_{F/F1}))`` for every group element."""
    F = n.field
    ctx = galois_closure(F)
    st = structure or cm_structure(F)
    r = squarefree_decomposition(abs(st.norm_rel_disc.numerator * st.norm_rel_disc.denominator))[1]
    if st.norm_rel_disc < 0:
        r = -r
    rows = []
    for g in ctx.elements():
        e1 = signature(n, g, ctx)
        e2 = signature(n, g, ctx, tilde=True)
        s = 1 if r == 1 else galois_action_on_sqrt(ctx, g, r)
        rows.append(ReciprocityRow(g, e1, e2, e1 * e2, s))
    return ReciprocityTable(r, tuple(rows))
