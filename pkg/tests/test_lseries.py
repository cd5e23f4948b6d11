import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from heckeratio.chartypes import InfinityType, analytic_type, parse_type
from heckeratio.errors import (DenominatorIndistinguishableFromZero, NotCritical, OutsideConvergence, PoleAtS,
                               TailTooLarge)
from heckeratio.lseries import (EvalResult, choose_X, completed, dirichlet_sum, euler_product, gamma_C, gamma_R,
                                linf_factor, ratio, ratio_of, tail_bound)
from heckeratio.numfield import get_field
from heckeratio.qi import HeckeCharacterSpec, base_change_coeffs, coefficients, quad_field

from oracles import dedekind_zeta_qi, ideal_count_qi

QI = quad_field("Q(i)")
LAT = QI.lattice_constants()
PSI = HeckeCharacterSpec(k=8)
PSI_OMEGA = PSI.with_quad("4+i")
TRIVIAL = HeckeCharacterSpec(k=0)


# Gamma factors ---------------------------------------------------------------------------------

def test_duplication_identity_20_points():
    with mpmath.workprec(192):
        pts = [mpmath.mpf(k) / 3 + 1 for k in range(10)] + [mpmath.mpc(0.5 + k, 1.5 - k / 4) for k in range(10)]
        for s in pts:
            lhs = gamma_C(s)
            rhs = gamma_R(s) * gamma_R(s + 1)
            assert abs(lhs - rhs) <= mpmath.mpf(10) ** -40 * max(1, abs(lhs))


@given(st.floats(0.1, 30), st.floats(-5, 5))
def test_duplication_identity_random(x, y):
    with mpmath.workprec(128):
        s = mpmath.mpc(x, y)
        assert abs(gamma_C(s) - gamma_R(s) * gamma_R(s + 1)) <= mpmath.mpf(2) ** -110 * abs(gamma_C(s))


def test_gamma_poles():
    for bad in (0, -1, -4):
        with pytest.raises(PoleAtS):
            gamma_C(bad)
    for bad in (0, -2, -6):
        with pytest.raises(PoleAtS):
            gamma_R(bad)
    gamma_R(-1)  # Gamma(-1/2) is finite


def test_linf_factor_qi():
    t = parse_type(get_field("Q(i)"), "-8,0")
    assert linf_factor(t, 7) == gamma_C(7)
    with pytest.raises(PoleAtS):
        linf_factor(parse_type(get_field("Q(i)"), "0,-8"), 0)


# tail bounds --------------------------------------------------------------------------------------

def test_lattice_constants_qi():
    c, h = LAT
    assert c == pytest.approx(math.pi / 4)
    assert h == pytest.approx(math.sqrt(2) / 2)


def test_lattice_majorant_holds():
    c, h = LAT
    total = 0
    for t in range(1, 20001):
        total += ideal_count_qi(t)
        assert total <= c * (math.sqrt(t) + h) ** 2


@pytest.mark.parametrize("X", [10, 100, 1000, 10000])
@pytest.mark.parametrize("s", [2, 3])
def test_tail_bounds_dominate_true_tail(X, s):
    with mpmath.workprec(96):
        exact = dedekind_zeta_qi(s)
        partial = sum(mpmath.mpf(ideal_count_qi(n)) / mpmath.mpf(n) ** s for n in range(1, X + 1))
        true_tail = exact - partial
        assert 0 < true_tail <= tail_bound(X, s, 2, LAT)
        assert true_tail <= tail_bound(X, s, 2)


@given(st.integers(2, 10 ** 7), st.floats(1.05, 12))
def test_tail_bound_monotone_in_X(X, sigma):
    assert tail_bound(2 * X, sigma) <= tail_bound(X, sigma)
    assert tail_bound(X, sigma, 2, LAT) <= tail_bound(X, sigma)


def test_choose_X_meets_tail():
    for w, s, tail in ((8, 7, 1e-10), (8, 8, 1e-10), (0, 2, 5e-7), (0, 3, 1e-12)):
        X = choose_X(w, s, tail, lattice=LAT)
        assert tail_bound(X, s - w / 2, 2, LAT) <= tail
        assert tail_bound(X // 2, s - w / 2, 2, LAT) > tail
    assert choose_X(8, 7, 1e-10, lattice=LAT) == 109568
    with pytest.raises(OutsideConvergence):
        choose_X(8, 5, 1e-10)
    with pytest.raises(TailTooLarge):
        choose_X(0, 1.01, 1e-30, cap=10 ** 4)


# Dirichlet sums --------------------------------------------------------------------------------

def test_zeta_qi_at_2():
    X = choose_X(0, 2, 5e-7, lattice=LAT)
    r = dirichlet_sum(coefficients(TRIVIAL, X), 2)
    oracle = dedekind_zeta_qi(2)
    assert r.error_bound <= 1e-6
    assert abs(r.value - oracle) <= r.error_bound
    assert abs(r.value - mpmath.mpf("1.5067030")) <= 1e-6


def test_tail_soundness_under_doubling():
    s = coefficients(PSI_OMEGA, 40000)
    a = dirichlet_sum(s, 7, X=20000)
    b = dirichlet_sum(s, 7, X=40000)
    assert abs(a.value - b.value) <= a.error_bound + b.error_bound
    assert b.tail_bound < a.tail_bound


def test_exact_and_mp_paths_agree():
    s = coefficients(PSI_OMEGA, 5000)
    a = dirichlet_sum(s, 7)
    b = dirichlet_sum(s, mpmath.mpf(7) + mpmath.mpf(2) ** -200)
    assert abs(a.value - b.value) <= a.rounding_bound + b.rounding_bound + mpmath.mpf(2) ** -150


@pytest.mark.parametrize("s", [9, 10])
def test_euler_vs_dirichlet(s):
    X = 100000
    d = dirichlet_sum(coefficients(PSI, X), s)
    e = euler_product(PSI, s, X)
    assert not e.rigorous
    assert abs(d.value - e.value) <= d.error_bound + e.error_bound


def test_euler_vs_dirichlet_conjugate_embedding():
    X = 30000
    d = dirichlet_sum(coefficients(PSI_OMEGA, X), 9, iota=1)
    e = euler_product(PSI_OMEGA, 9, X, iota=1)
    assert abs(d.value - e.value) <= d.error_bound + e.error_bound


def test_conjugate_embedding_gives_conjugate_value():
    s = coefficients(PSI_OMEGA, 5000)
    assert dirichlet_sum(s, 7, iota=1).value == mpmath.conj(dirichlet_sum(s, 7).value)


@pytest.mark.parametrize("s", [7, mpmath.mpc(6.5, 0.25)])
def test_worker_determinism(s):
    stream = coefficients(PSI_OMEGA, 60000)
    outs = [dirichlet_sum(stream, s, workers=w) for w in (1, 4, 8)]
    assert all(o.value == outs[0].value for o in outs)
    assert all(o.error_bound == outs[0].error_bound for o in outs)


def test_outside_convergence():
    with pytest.raises(OutsideConvergence):
        dirichlet_sum(coefficients(PSI, 100), 5)
    with pytest.raises(TailTooLarge):
        dirichlet_sum(coefficients(PSI, 100), 7, required_tail=1e-30)


def test_convolution_carries_divisor_order():
    bc = base_change_coeffs(PSI, "4+i", 2000)
    assert bc.divisor_order == 4 and not bc.ideal_bound
    r = dirichlet_sum(bc, 8)
    a = dirichlet_sum(coefficients(PSI, 2000), 8)
    b = dirichlet_sum(coefficients(PSI_OMEGA, 2000), 8)
    assert abs(r.value - a.value * b.value) <= r.error_bound + 3 * (a.error_bound + b.error_bound) * abs(a.value * b.value)


# completed values and ratios --------------------------------------------------------------------

def test_completed_errors_in_order():
    with pytest.raises(PoleAtS):
        completed(PSI, 0, 0)
    with pytest.raises(NotCritical):
        completed(PSI, 0, 9)
    with pytest.raises(OutsideConvergence):
        completed(PSI, 0, 5)


def test_ratio_inverse_and_product():
    r = ratio(PSI, 0, 7, tail=1e-12)
    one = r * r.inverse()
    assert abs(one.ratio - 1) <= one.error_bound + mpmath.mpf(2) ** -150
    assert one.error_bound < 1e-10


def test_ratio_psi_is_20_over_21():
    r = ratio(PSI, 0, 7, tail=1e-12)
    assert abs(r.ratio - mpmath.mpf(20) / 21) <= r.error_bound


def test_denominator_indistinguishable():
    A = EvalResult(mpmath.mpc(1), mpmath.mpf(0), 64, 10)
    B = EvalResult(mpmath.mpc(1e-3), mpmath.mpf(1e-2), 64, 10)
    with pytest.raises(DenominatorIndistinguishableFromZero):
        ratio_of(A, B, 7)


def test_analytic_type_critical_for_psi():
    assert analytic_type(PSI).exponents == (-8, 0)
    assert isinstance(analytic_type(PSI_OMEGA), InfinityType)
