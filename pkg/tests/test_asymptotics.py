"""Turning-point data, large-order laws and the recurrence constants."""
import mpmath
import pytest

from mapenum.asymptotics import (asymptotic_vs_exact, c_recurrence, critical_data, e1_log_coefficient,
                                 gamma_direct, lagrange_coefficients, root_multiplicity, trinomial_poly,
                                 zeta_recurrence)
from mapenum.curve import build_curve
from mapenum.exact import Poly, sturm_isolate


@pytest.fixture(scope="module")
def cd3():
    return critical_data(3, 64)


def test_cubic_critical_point(cd3):
    # published: (xi_c^2, y0c, z0c) = (1/(108 sqrt 3), 2 (2 - sqrt 3), sqrt 3)
    with mpmath.workprec(64):
        tol = mpmath.mpf(10) ** -12
        assert abs(cd3.xi2c - 1 / (108 * mpmath.sqrt(3))) < tol
        assert abs(cd3.y0c.value(64) - 2 * (2 - mpmath.sqrt(3))) < tol
        assert abs(cd3.z0c - mpmath.sqrt(3)) < tol
    assert cd3.xi_c < 0 and cd3.t_c > 0
    assert cd3.dPi != 0


def test_signs_and_constants(cd3):
    assert cd3.gamma > 0 and cd3.C1 < 0 and cd3.C2 > 0
    # C2 = ((j/2 - 1)^2 / 4) xi_c^2
    assert abs(cd3.C2 - cd3.xi2c / 16) < mpmath.mpf(10) ** -18


def test_gamma_two_routes(cd3):
    est = gamma_direct(cd3)
    assert abs(est[-1] - cd3.gamma) < mpmath.mpf(10) ** -9


def test_zeta_positive_and_first_value(cd3):
    z = zeta_recurrence(cd3, 6)
    assert len(z) == 6 and all(v > 0 for v in z)
    # derived (frozen): zeta_1 = 1/20736 at j = 3
    assert abs(z[0] - mpmath.mpf(1) / 20736) < mpmath.mpf(10) ** -15


def test_zeta_other_valence():
    assert all(v > 0 for v in zeta_recurrence(critical_data(5, 64), 4))


def test_e1_log_coefficient(cd3):
    assert abs(e1_log_coefficient(cd3) + mpmath.mpf(1) / 24) < mpmath.mpf(10) ** -15
    c = c_recurrence(cd3, -mpmath.mpf(1) / 24, 3)
    assert len(c) == 3


def test_lagrange_coefficients_match_series():
    m = build_curve(3)
    from mapenum.exact import RatFn
    got = lagrange_coefficients(m, m.z0, 4)
    # z0 = 1 + 36 xi^2 + 3240 xi^4 + 373248 xi^6 + ...
    assert got[:3] == [36, 3240, 373248]
    assert lagrange_coefficients(m, RatFn(Poly.gen("y")), 2) == [36, 2592]


def test_transfer_law_genus_zero_converges(cd3):
    tab = asymptotic_vs_exact(3, 0, "twolegged", range(4, 13), 64, cd3)
    assert tab.monotone()
    assert 0.9 < float(tab.rows[-1][3]) < 1
    # the published law is off by the factor 2 from +- xi_c
    assert abs(tab.printed_limit - 2) < 1e-30
    assert abs(float(tab.rows[-1][4]) - 2 * float(tab.rows[-1][3])) < 1e-12


def test_genus_two_ratio_drift(cd3):
    tab = asymptotic_vs_exact(3, 2, "eg", range(3, 7), 64, cd3)
    assert tab.monotone()
    # the exact column is the Lagrange coefficient of the e2 closed form, equal to the series
    from mapenum.counts import eg_series
    from mapenum.genfun import e2_closed_j3
    lag = lagrange_coefficients(build_curve(3), e2_closed_j3().rational, 6)
    assert lag == list(eg_series(3, 2, 6).coeffs[1:7])
    assert "float precision=64" in tab.csv(64)


def test_trinomial_and_multiplicity():
    # trivial: [eta^0](eta + s + 1/eta)^2 = s^2 + 2
    assert trinomial_poly(2, 0) == Poly([2, 0, 1], "s")
    p = Poly([4, -8, 1], "y")
    r = sturm_isolate(p)[0]
    assert root_multiplicity(p * p * Poly([1, 1], "y"), r) == 2
    assert root_multiplicity(Poly([1, 1], "y"), r) == 0


def test_rejects_even_valence():
    with pytest.raises(ValueError):
        critical_data(4)
    with pytest.raises(ValueError):
        zeta_recurrence(critical_data(3, 53), 0)
    with pytest.raises(ValueError):
        asymptotic_vs_exact(3, 1, "eg", range(2, 4))
