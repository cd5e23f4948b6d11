import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from heckeratio.errors import EvenPrimeUnsupported, TwistTableError, UnitIncompatible
from heckeratio.qi import (HeckeCharacterSpec, PrimeIdeal, base_change_coeffs, char_raw, char_value,
                           coefficients, convolve, divisor_counts, primes_over, primes_up_to, quad_char,
                           quad_field)

from oracles import ideal_count_qi, psi8_coefficient

QI = quad_field("Q(i)")
D = QI.parse("4+i")
PSI = HeckeCharacterSpec(k=8)
PSI_OMEGA = PSI.with_quad("4+i")


def _P(x):
    """The prime ideal of Z[i] generated by ``x`` (looked up among the listed primes)."""
    n = QI.norm(x)
    for P in primes_up_to(QI, n):
        if P.norm == n and any(QI.mul(P.generator, u) == x for u in QI.units()):
            return P
    raise LookupError(x)


# primes ----------------------------------------------------------------------------------------

def test_primes_up_to_10():
    got = [(P.norm, P.kind, QI.format(P.generator)) for P in primes_up_to(QI, 10)]
    assert [g[:2] for g in got] == [(2, "ramified"), (5, "split"), (5, "split"), (9, "inert")]
    assert sorted(g[2] for g in got if g[0] == 5) == ["2+i", "2-i"]
    assert QI.norm(_P((1, 1)).generator) == 2
    assert got[3][2] == "3"
    assert primes_up_to(QI, 1) == []


@pytest.mark.parametrize("name", ["Q(i)", "Q(w)", "Q(sqrt-2)"])
def test_prime_decomposition_matches_trial_factorization(name):
    F = quad_field(name)
    for p in [q for q in range(2, 200) if all(q % r for r in range(2, math.isqrt(q) + 1))]:
        # oracle: number of solutions of x^2 + Bx + C = 0 mod p
        roots = sum(1 for x in range(p) if (x * x + F.B * x + F.C) % p == 0)
        Ps = primes_over(F, p)
        if F.disc % p == 0:
            assert [P.kind for P in Ps] == ["ramified"]
        elif roots == 2:
            assert [P.kind for P in Ps] == ["split", "split"]
        else:
            assert roots == 0 and [P.kind for P in Ps] == ["inert"]
        for P in Ps:
            assert F.norm(P.generator) == P.norm
            assert P.norm in (p, p * p)


def test_inert_primes_have_no_norm_solutions():
    for p in (3, 7, 11, 19, 23):
        assert not any(x * x + y * y == p for x in range(p) for y in range(p))
        assert [P.kind for P in primes_over(QI, p)] == ["inert"]


def test_primes_have_norm_at_most_X():
    for X in (2, 9, 10, 50, 121):
        assert all(P.norm <= X for P in primes_up_to(QI, X))


# characters ------------------------------------------------------------------------------------

def test_char_values_k8():
    assert char_value(PSI, _P((1, 1))) == (Fraction(16), Fraction(0))
    assert char_value(PSI, _P((2, 1))) == (Fraction(-527), Fraction(-336))


def test_unit_incompatible():
    with pytest.raises(UnitIncompatible):
        HeckeCharacterSpec(k=6)
    with pytest.raises(UnitIncompatible):
        HeckeCharacterSpec(field="Q(w)", k=2)
    HeckeCharacterSpec(field="Q(w)", k=6)
    HeckeCharacterSpec(field="Q(sqrt-2)", k=2)


def test_twist_table_validation():
    ok = HeckeCharacterSpec(k=6, twist_modulus=(2, 0), twist_table=(((0, 1), (-1, 0)),))
    assert ok.finite_value((1, 1)) == (0, 0)
    with pytest.raises(TwistTableError):
        HeckeCharacterSpec(k=6, twist_modulus=(2, 0))
    with pytest.raises(TwistTableError):
        HeckeCharacterSpec(k=6, twist_modulus=(2, 0), twist_table=(((0, 1), (2, 0)),))
    with pytest.raises(TwistTableError):
        # sends i to a non-character value: i^2 = -1 must map to table(i)^2
        HeckeCharacterSpec(k=4, twist_modulus=(3, 0), twist_table=(((0, 1), (1, 0)), ((1, 1), (0, 1))))


@pytest.mark.parametrize("chi", [PSI, PSI_OMEGA,
                                 HeckeCharacterSpec(k=6, twist_modulus=(2, 0), twist_table=(((0, 1), (-1, 0)),)),
                                 HeckeCharacterSpec(k=-4)])
def test_value_is_generator_independent(chi):
    for P in primes_up_to(QI, 400):
        if P.norm % 2 == 0:
            continue
        vals = {char_raw(chi, PrimeIdeal(QI.mul(P.generator, u), P.norm, P.kind, P.p, P.root))
                for u in QI.units()}
        assert len(vals) == 1


def test_json_roundtrip():
    chi = HeckeCharacterSpec(k=6, twist_modulus=(2, 0), twist_table=(((0, 1), (-1, 0)),), quad_d=D, tate=1)
    assert HeckeCharacterSpec.from_json(chi.to_json()) == chi
    spec = '{"field": "Q(i)", "k": 8, "twist_modulus": null, "twist_table": null, "quad_d": "4+i", "tate": 0}'
    assert HeckeCharacterSpec.from_json(spec) == PSI_OMEGA


# quadratic characters -----------------------------------------------------------------------------

def test_quad_char_examples():
    assert quad_char(QI, D, _P((3, 0))) == -1
    assert quad_char(QI, D, _P((2, 1))) == -1
    assert quad_char(QI, (9, 0), _P((3, 0))) == 1
    assert quad_char(QI, D, _P((1, 1))) == 0
    with pytest.raises(EvenPrimeUnsupported):
        quad_char(QI, D, _P((1, 1)), strict=True)


def _brute_is_square(P, d):
    """Exhaustive search for x with x^2 = d modulo P."""
    target = P.residue(QI, d)
    if P.kind == "inert":
        p = P.p
        return any(P.residue(QI, QI.mul((a, b), (a, b))) == target for a in range(p) for b in range(p))
    return any(P.residue(QI, (x * x, 0)) == target for x in range(P.p))


@pytest.mark.parametrize("d", ["4+i", "3", "1+2i", "-1", "5+6i"])
def test_quad_char_matches_exhaustive_squares(d):
    d = QI.parse(d)
    for P in primes_up_to(QI, 400):
        if P.norm % 2 == 0:
            continue
        v = quad_char(QI, d, P)
        if P.residue(QI, d) in (0, (0, 0)):
            assert v == 0
        else:
            assert v == (1 if _brute_is_square(P, d) else -1)


# coefficient streams -----------------------------------------------------------------------------

def test_psi8_stream_matches_brute_force():
    s = coefficients(PSI, 3000)
    assert s.shift == 0
    for n in range(1, 3001):
        assert s.raw(n) == psi8_coefficient(n), n
    assert s.raw(2) == (16, 0) and s.raw(3) == (0, 0) and s.raw(5) == (-1054, 0)


def test_trivial_stream_counts_ideals():
    s = coefficients(HeckeCharacterSpec(k=0), 2000)
    assert all(s.raw(n) == (ideal_count_qi(n), 0) for n in range(1, 2001))
    assert s.raw(5) == (2, 0)


@pytest.mark.parametrize("chi", [PSI, PSI_OMEGA, HeckeCharacterSpec(field="Q(w)", k=6),
                                 HeckeCharacterSpec(field="Q(sqrt-2)", k=4, quad_d=(1, 1))])
def test_a1_and_stream_realness(chi):
    s = coefficients(chi, 500)
    assert s.raw(1) == (1, 0)
    if chi == PSI:
        assert s.is_real()


def test_psi_omega_is_not_conjugation_stable():
    # omega_d(P) and omega_d(conj P) differ because 4+i is not fixed by conjugation,
    # so the psi*omega stream has non-real coefficients
    s = coefficients(PSI_OMEGA, 500)
    P, Q = primes_over(QI, 5)
    assert quad_char(QI, D, P) != quad_char(QI, D, Q) or quad_char(QI, D, _P((3, 2))) != quad_char(QI, D, _P((3, -2)))
    assert not s.is_real()


S = coefficients(PSI_OMEGA, 5000)


@given(st.integers(1, 70), st.integers(1, 70))
def test_multiplicative_on_coprime(m, n):
    if math.gcd(m, n) != 1:
        return
    assert S.raw(m * n) == QI.mul(S.raw(m), S.raw(n))


def test_coefficient_bound():
    d = divisor_counts(5000)
    for n in range(1, 5001):
        z = abs(complex(S.complex(n)))
        assert z <= d[n] * n ** (S.weight / 2) * (1 + 1e-12)
        # the sharper ideal-count bound used for the tail
        assert z <= ideal_count_qi(n) * n ** (S.weight / 2) * (1 + 1e-12)


def test_tate_twist_shift():
    t = coefficients(PSI.twisted(3), 200)
    base = coefficients(PSI, 200)
    for n in range(1, 201):
        assert t.exact(n) == (Fraction(base.c0[n], n ** 3), Fraction(base.c1[n], n ** 3))


def test_base_change_trivial_counts_ideals_of_F():
    s = base_change_coeffs(HeckeCharacterSpec(k=0), "4+i", 60)
    for p in range(3, 51):
        if any(p % r == 0 for r in range(2, p)) or p == 17:
            continue
        Ps = primes_over(QI, p)
        if Ps[0].kind == "split":
            # each degree-one prime of Q(i) splits into two of F when omega = +1
            expected = sum(2 for P in Ps if _brute_is_square(P, D))
        else:
            expected = 0  # the norm-p^2 prime cannot contribute at n = p
        assert s.raw(p) == (expected, 0)


def test_base_change_square_d_is_square_of_stream():
    X = 300
    sq = base_change_coeffs(PSI, "9", X)
    a = coefficients(PSI, X)
    ref = convolve(a, a, X)
    odd = [n for n in range(1, X + 1) if n % 2]
    assert all(sq.raw(n) == ref.raw(n) for n in odd)


def test_base_change_a9_by_hand():
    s = base_change_coeffs(PSI, "4+i", 9)
    a = coefficients(PSI, 9)
    b = coefficients(PSI_OMEGA, 9)
    by_hand = (0, 0)
    for i in (1, 3, 9):
        by_hand = QI.add(by_hand, QI.mul(a.raw(i), b.raw(9 // i)))
    assert s.raw(9) == by_hand
    # psi((3)) = 3^8 and omega((3)) = -1, so a_9 = 3^8 + (-3^8) = 0
    assert a.raw(9) == (3 ** 8, 0) and b.raw(9) == (-(3 ** 8), 0) and s.raw(9) == (0, 0)
