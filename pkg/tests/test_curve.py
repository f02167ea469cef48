"""Spectral curve: rational identities, turning points, conservation-law residual, export."""
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from mapenum.curve import (_HodographSystem, branch_points, build_curve, conservation_residual,
                           curve_csv, curve_svg, derivative_identities, pole_zero_structure,
                           pi_factor_check, riemann_data, sample_curve)
from mapenum.exact import Poly, RatFn


def test_cubic_curve_closed_form():
    # trivial: xi^2 = y (2 - y) / (9 (y + 2)^3), z0 = (y + 2)/(2 - y), Pi = y^2 - 8 y + 4 (up to scale)
    m = build_curve(3)
    y = Poly.gen("y")
    assert m.xi2 == RatFn(y * (2 - y), (y + 2) ** 3 * 9)
    assert m.z0 == RatFn(y + 2, 2 - y)
    assert m.Pi.monic() == Poly([4, -8, 1], "y")
    assert m.xi2(Fraction(3, 2)) == Fraction(2, 1029)


@pytest.mark.parametrize("j", [3, 5, 7, 9, 11])
def test_odd_identities(j):
    m = build_curve(j)
    assert pi_factor_check(m).passed
    assert derivative_identities(m).passed
    assert pole_zero_structure(m).passed


def test_cubic_turning_points():
    # published: y0c = 2 (2 - sqrt 3), xi2c = 1/(108 sqrt 3)
    right, left = branch_points(build_curve(3), 80)
    with mpmath.workprec(80):
        assert abs(right.y0.value(80) - 2 * (2 - mpmath.sqrt(3))) < mpmath.mpf(10) ** -20
        assert abs(right.xi2 - 1 / (108 * mpmath.sqrt(3))) < mpmath.mpf(10) ** -20
        assert abs(left.y0.value(80) - 2 * (2 + mpmath.sqrt(3))) < mpmath.mpf(10) ** -20
    assert left.xi2 < 0


def test_even_curve():
    m = build_curve(4)
    # trivial: xi = (1 - z) / (c z^2) with c = 4 C(3, 1) = 12
    assert m.c_j == 12 and not m.odd
    with pytest.raises(ValueError):
        pi_factor_check(m)
    with pytest.raises(ValueError):
        sample_curve(m, 0, 1, 5)


def test_riemann_invariants_at_origin():
    # at y = 0 (h0 = 0, f0 = 1 at x = 1): r+- = +-2
    rd = riemann_data(build_curve(3), Fraction(0))
    assert abs(rd.r_plus - 2) < 1e-15 and abs(rd.r_minus + 2) < 1e-15


@pytest.mark.parametrize("tvec", [(0, 0, 1), (0, 0, 0, 1), (0, 0, 0.05, 1)])
def test_conservation_second_order(tvec):
    st = conservation_residual(tvec)
    assert st.order >= 1.8
    assert all(r.flagged == 0 for r in st.results)


def test_swapped_flux_does_not_converge():
    # negative control: exchanging the h and log f fluxes leaves an O(1) residual
    sysm = _HodographSystem((0, 0, 1))
    sysm.F1, sysm.F2 = sysm.F2, sysm.F1
    xi, x = np.meshgrid(np.linspace(0.005, 0.02, 5), np.linspace(0.9, 1.1, 5))
    r1, _ = sysm.residual(xi.ravel(), x.ravel(), 2e-3)
    r2, _ = sysm.residual(xi.ravel(), x.ravel(), 1e-3)
    assert r2 > 0.5 and r2 > 0.5 * r1


def test_sampling_and_export():
    m = build_curve(3)
    pts = sample_curve(m, 0, 6, 5)
    assert pts[1] == (Fraction(3, 2), Fraction(2, 1029))
    csv = curve_csv(pts, 6)
    assert csv.splitlines()[0] == "y0,xi2,y0_exact,xi2_exact"
    assert "2/1029" in csv
    svg = curve_svg(pts, [(0, 1, "mark")])
    assert svg.startswith("<svg") and "polyline" in svg and "mark" in svg
    assert sample_curve(m, 2, 1, 5) == []
    assert "polyline" not in curve_svg([])


def test_bad_valence():
    with pytest.raises(ValueError):
        build_curve(2)
    with pytest.raises(ValueError):
        conservation_residual(())
