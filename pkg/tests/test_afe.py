from fractions import Fraction

import mpmath
import pytest

from heckeratio.afe import afe_completed, afe_data, afe_lfinite, afe_ratio, conductor_candidates
from heckeratio.errors import NotCritical
from heckeratio.lseries import dirichlet_sum, ratio
from heckeratio.qi import HeckeCharacterSpec, coefficients
from heckeratio.verify import recognize_rational

PSI = HeckeCharacterSpec(k=8)
PSI_OMEGA = PSI.with_quad("4+i")


def test_conductor_candidates():
    assert conductor_candidates(PSI) == [4]
    c = conductor_candidates(PSI_OMEGA)
    assert 1088 in c and all(n % 4 == 0 for n in c)


def test_psi_root_number_is_one():
    data = afe_data(PSI)
    assert data.N == 4 and data.K == 9
    with mpmath.workprec(256):
        assert abs(data.eps - 1) < mpmath.mpf(10) ** -40


def test_psi_omega_root_number():
    data = afe_data(PSI_OMEGA)
    conj = afe_data(PSI_OMEGA, 1)
    assert data.N == 1088 and conj.N == 1088
    with mpmath.workprec(256):
        assert abs(abs(data.eps) - 1) < mpmath.mpf(10) ** -40
        # not +-1: the twisted character is not conjugation stable
        assert abs(data.eps.imag) > 0.5
        assert abs(conj.eps - mpmath.conj(data.eps)) < mpmath.mpf(10) ** -40


@pytest.mark.parametrize("chi", [PSI, PSI_OMEGA])
@pytest.mark.parametrize("s", [7, 8, mpmath.mpc(7.5, 1)])
def test_afe_matches_dirichlet_in_convergence_region(chi, s):
    a = afe_lfinite(chi, s)
    d = dirichlet_sum(coefficients(chi, 200000), s)
    assert abs(a.value - d.value) <= a.error_bound + d.error_bound
    assert abs(a.value - d.value) < 1e-9


def test_afe_ratio_agrees_with_dirichlet_ratio():
    a = afe_ratio(PSI_OMEGA, 0, 7)
    d = ratio(PSI_OMEGA, 0, 7)
    assert abs(a.ratio - d.ratio) <= a.error_bound + d.error_bound


def test_afe_reaches_left_of_convergence():
    r3 = afe_ratio(PSI, 0, 3)
    rec = recognize_rational(r3.ratio.real, 10 ** 4, mpmath.mpf(10) ** -30)
    assert rec.recognized and rec.fraction == Fraction(8, 3)
    assert abs(r3.ratio.imag) < mpmath.mpf(10) ** -40


def test_afe_rejects_non_critical():
    with pytest.raises(NotCritical):
        afe_completed(PSI, 0, 9)
