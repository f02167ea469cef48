"""Finite-n recurrence coefficients from Hankel determinants of the moments."""
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mapenum.discrete import (a_via_t1, compare_with_series, extract_genus_coeffs, hankel_positivity,
                              hankel_recurrence, moments, verify_string, verify_t1_toda,
                              verify_toda_and_edge)
from mapenum.genfun import build_series_context


def test_gaussian_moments():
    # trivial: m_2k = (2k-1)!! / N^k at t = 0
    m = moments(3, 6, 0, 2)
    assert [s.coeffs[0] if s.coeffs else 0 for s in m] == [1, 0, Fraction(1, 2), 0, Fraction(3, 4), 0,
                                                           Fraction(15, 8)]


@given(st.integers(1, 6), st.fractions(1, 10, max_denominator=4))
def test_gaussian_recurrence(nmax, N):
    # trivial (Hermite): a_n = 0, b_n^2 = n / N at t = 0
    c = hankel_recurrence(3, nmax, 1, N)
    for n in range(nmax + 1):
        assert c.a[n][0] == 0
        assert c.b2[n][0] == Fraction(n) / N


@given(st.integers(1, 5), st.integers(1, 9))
def test_first_order_cubic(n, N):
    # derived from the diagonal string equation at order t: [t] a_n = -3 (2n + 1) / N
    c = hankel_recurrence(3, n, 2, N)
    assert c.a[n][1] == Fraction(-3 * (2 * n + 1), N)


def test_specific_first_order_value():
    assert hankel_recurrence(3, 8, 2).a[3][1] == Fraction(-21, 8)


@pytest.mark.parametrize("j", [3, 4])
def test_identity_route_for_a(j):
    c = hankel_recurrence(j, 5, 3)
    assert a_via_t1(j, 5, 3) == c.a


@pytest.mark.parametrize("j", [3, 4])
def test_string_toda_edge_through_t4(j):
    c = hankel_recurrence(j, 8, 4)
    assert verify_string(c).passed
    assert verify_toda_and_edge(c).passed
    assert hankel_positivity(j, 8).passed


def test_t1_toda():
    assert verify_t1_toda(8, 4).passed


def test_wrong_valence_fails_string_equations():
    # negative control: data for j = 3 do not satisfy the j = 4 string equations
    import dataclasses
    c = dataclasses.replace(hankel_recurrence(3, 8, 3), j=4)
    assert not verify_string(c).passed


def test_genus_extraction_cubic():
    ex = extract_genus_coeffs(3, 4)
    assert ex.consistent
    # derived: z0 = 1 + 36 t^2 + 3240 t^4, z1 = 810 t^4, u2 = -135 t^3
    assert ex.z(0) == [1, 0, 36, 0, 3240]
    assert ex.z(1) == [0, 0, 0, 0, 810]
    assert ex.u(2)[3] == -135
    assert compare_with_series(ex, build_series_context(3, 4)).passed


def test_genus_extraction_quartic():
    ex = extract_genus_coeffs(4, 4)
    assert ex.consistent
    assert compare_with_series(ex, build_series_context(4, 3)).passed


def test_invalid():
    with pytest.raises(ValueError):
        hankel_recurrence(0, 3, 2)
