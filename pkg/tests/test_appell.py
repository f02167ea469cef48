"""Appell families S_n, R_n and the derived curve polynomials."""
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mapenum.appell import (B12, R, S, Shat, appell_derivative_check, binomial_identity_check,
                            build_appell, catalan, divisibility_check, generating_function_check,
                            interlacing_check, sB11)
from mapenum.exact import Poly


def test_low_order_values():
    # trivial: S_2 = zeta^2 + 2, R_2 = zeta^2 + 1, S_3 = zeta^3 + 6 zeta
    assert S(2) == Poly([2, 0, 1], "zeta")
    assert R(2) == Poly([1, 0, 1], "zeta")
    assert S(3) == Poly([0, 6, 0, 1], "zeta")
    assert [catalan(n) for n in range(6)] == [1, 1, 2, 5, 14, 42]


def test_cubic_curve_polynomials():
    # trivial: nu = 1 gives B12 = y + 2, sqrt(y) B11 = 2y, Shat = 2 - y
    assert B12(1) == Poly([2, 1], "y")
    assert sB11(1) == Poly([0, 2], "y")
    assert Shat(1) == Poly([2, -1], "y")


@pytest.mark.parametrize("zeta", [Fraction(3, 10), Fraction(-7, 5)])
def test_generating_function_against_bessel_numerics(zeta):
    # derived: Taylor coefficients of I0(2s) e^{s zeta} and I1(2s)/s e^{s zeta} by mpmath
    def mpq(x):
        return mpmath.mpf(x.numerator) / x.denominator

    z = mpq(zeta)
    ts = mpmath.taylor(lambda s: mpmath.besseli(0, 2 * s) * mpmath.exp(s * z), 0, 8)
    tr = mpmath.taylor(lambda s: (mpmath.besseli(1, 2 * s) / s if s != 0 else mpmath.mpf(1))
                       * mpmath.exp(s * z), 0, 8)
    for n in range(9):
        fn = mpmath.factorial(n)
        assert abs(ts[n] * fn - mpq(S(n)(zeta))) < mpmath.mpf(10) ** -10
        assert abs(tr[n] * fn - mpq(R(n)(zeta))) < mpmath.mpf(10) ** -10


def test_identity_suites_through_twelve():
    fam = build_appell(12)
    assert appell_derivative_check(fam).passed
    assert generating_function_check(12).passed
    assert binomial_identity_check(12).passed


@pytest.mark.parametrize("nu", range(1, 7))
def test_divisibility_quotient_exact(nu):
    q = divisibility_check(nu)
    j = 2 * nu + 1
    assert q * Poly([4, -1], "y") == B12(nu) * (2 * j - 2) - sB11(nu) * j


def test_interlacing():
    assert interlacing_check(8).passed


@given(st.integers(0, 14), st.fractions(-5, 5, max_denominator=7), st.fractions(-5, 5, max_denominator=7))
def test_appell_addition_theorem(n, a, b):
    # Appell sequences: S_n(a + b) = sum_k C(n, k) S_k(a) b^(n-k)
    from math import comb
    assert S(n)(a + b) == sum(comb(n, k) * S(k)(a) * b ** (n - k) for k in range(n + 1))
    assert R(n)(a + b) == sum(comb(n, k) * R(k)(a) * b ** (n - k) for k in range(n + 1))


@given(st.integers(1, 14))
def test_parity(n):
    assert S(n).is_even() if n % 2 == 0 else S(n).is_odd()
    assert R(n).is_even() if n % 2 == 0 else R(n).is_odd()


def test_build_appell_rejects_bad_order():
    with pytest.raises(ValueError):
        build_appell(0)
    with pytest.raises(ValueError):
        divisibility_check(0)
