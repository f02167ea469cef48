"""String polynomials phi_m, psi_m and the unwinding identities."""
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mapenum.genfun import build_series_context
from mapenum.stringpoly import (HRPoly, even_valence_printed_form, general_potential_phi,
                                phi_psi_appell, phi_psi_extraction, restrict_h0, string_phi_psi,
                                unwinding_algebraic, unwinding_check)


def test_cubic_leading_string_polynomials():
    # trivial: j = 3, m = 0: 3 [eta^0] (r eta + h + r/eta)^2 = 3 h^2 + 6 r^2, psi = 3 * 2 h r * r
    phi, psi = phi_psi_extraction(3, 0)
    assert phi == HRPoly({(2, 0): 3, (0, 2): 6})
    assert psi == HRPoly({(1, 2): 6})


@pytest.mark.parametrize("j", range(3, 10))
def test_extraction_equals_appell_route(j):
    for m in range(-1, j):
        assert phi_psi_extraction(j, m) == phi_psi_appell(j, m)
        phi, psi = string_phi_psi(j, m)
        assert phi.value.is_poly_in_f() and psi.value.is_poly_in_f()


@pytest.mark.parametrize("j", [3, 4, 5, 6, 7])
def test_unwinding_algebraic(j):
    for m in range(1, j):
        assert unwinding_algebraic(j, m).passed


@pytest.mark.parametrize("j", [3, 5])
def test_unwinding_series_through_order_six(j):
    ctx = build_series_context(j, 4)
    for m in range(j):
        rep = unwinding_check(j, m, ctx)
        assert rep.passed, rep.failures
        assert rep.details["order"] >= 6


@pytest.mark.parametrize("nu", [2, 3, 4])
def test_even_printed_form_is_index_shift_and_scale(nu):
    # printed(m) = (2 nu - m) * definition(m - 1) restricted to h = 0, and differs from definition(m)
    for m in range(1, 2 * nu - 1):
        pp, ps = even_valence_printed_form(nu, m)
        a, b = (restrict_h0(p) for p in phi_psi_extraction(2 * nu, m - 1))
        assert pp == a * HRPoly.const(2 * nu - m) and ps == b * HRPoly.const(2 * nu - m)
        c, d = (restrict_h0(p) for p in phi_psi_extraction(2 * nu, m))
        assert (pp, ps) != (c, d)


@given(st.lists(st.fractions(-3, 3, max_denominator=5), min_size=1, max_size=5), st.integers(-1, 3))
def test_general_potential_is_linear_in_couplings(tvec, m):
    base, bpsi = general_potential_phi(tvec, m)
    doubled, dpsi = general_potential_phi([2 * t for t in tvec], m, gaussian=False)
    g_only, gpsi = general_potential_phi([0], m)
    assert base * HRPoly.const(2) == doubled + g_only * HRPoly.const(2)
    assert bpsi * HRPoly.const(2) == dpsi + gpsi * HRPoly.const(2)


def test_bad_indices_rejected():
    with pytest.raises(ValueError):
        phi_psi_extraction(3, 3)
    with pytest.raises(ValueError):
        string_phi_psi(2, 0)
    with pytest.raises(ValueError):
        general_potential_phi([], 0)
