"""Exact kernel: ring laws, division, gcd, series algebra, root isolation."""
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from mapenum.exact import (Poly, RatFn, Series, as_rat, count_roots, poly_gcd, rat_str,
                           squarefree_part, sturm_isolate)

rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small = st.integers(min_value=-9, max_value=9)
polys = st.lists(rats, min_size=0, max_size=6).map(lambda c: Poly(c, "x"))
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def series_of(order):
    return st.lists(rats, min_size=order + 1, max_size=order + 1).map(lambda c: Series(c, order, "x"))


# -- trivial ---------------------------------------------------------------

def test_rat_str_renders_p_over_q():
    assert rat_str(Fraction(3, 2)) == "3/2"
    assert rat_str(Fraction(-4, 2)) == "-2"
    assert rat_str(7) == "7"


def test_as_rat_rejects_floats():
    with pytest.raises(TypeError):
        as_rat(0.5)


def test_variable_mixing_is_caught():
    with pytest.raises(ValueError):
        Poly([1, 1], "x") + Poly([1, 1], "y")


def test_poly_basic_eval_and_degree():
    p = Poly([1, -3, 0, 2])
    assert p.degree == 3 and p(2) == 11
    assert Poly([]).is_zero() and Poly([0, 0]).is_zero()


# -- properties --------------------------------------------------------------

@given(polys, polys, polys)
def test_poly_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == Poly([], "x")


@given(polys, nonzero_polys)
def test_divmod_reconstructs(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_divides_and_is_common(a, b, c):
    assume(c.degree >= 1)
    g = poly_gcd(a * c, b * c)
    assert (a * c).divmod(g)[1].is_zero() and (b * c).divmod(g)[1].is_zero()
    assert g.divmod(c.monic())[1].is_zero()


@given(polys, rats)
def test_derivative_antiderivative_inverse(p, c):
    assert p.antideriv(c).deriv() == p


@given(series_of(6), series_of(6))
def test_series_product_matches_polynomial_product(a, b):
    prod = (a * b).coeffs
    full = (a.to_poly() * b.to_poly())
    assert all(prod[k] == full[k] for k in range(7))


@given(series_of(6).filter(lambda s: s[0] != 0))
def test_series_inverse(s):
    assert s * s.inverse() == Series.const(1, 6, "x")


@given(st.lists(rats, min_size=6, max_size=6).filter(lambda c: c[0] != 0))
def test_series_reversion(c):
    f = Series([0] + c, 6, "x")
    g = f.revert()
    assert f.compose(g) == Series.gen(6, "x")
    assert g.compose(f) == Series.gen(6, "x")


@given(st.lists(rats, min_size=5, max_size=5))
def test_log_exp_roundtrip(c):
    s = Series([0] + c, 5, "x")
    assert s.exp().log() == s


@given(series_of(5))
def test_euler_operator(s):
    assert s.euler() == Series.gen(5, "x") * s.deriv()


@given(polys, nonzero_polys, rats)
def test_ratfn_evaluation(a, b, x):
    assume(b(x) != 0)
    r = RatFn(a, b)
    assert r(x) == a(x) / b(x)


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=5, unique=True))
def test_sturm_isolation_finds_integer_roots(roots):
    p = Poly.from_roots(roots)
    iso = sturm_isolate(p)
    assert len(iso) == len(roots)
    vals = sorted(float(r.value(53)) for r in iso)
    assert np.allclose(vals, sorted(roots), atol=1e-12)
    assert count_roots(p, -7, 7) == len(roots)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_squarefree_part_drops_multiplicity(roots):
    p = Poly.from_roots(roots + roots)
    assert squarefree_part(p).degree == len(set(roots))


def test_isolated_irrational_root_to_high_precision():
    r, = sturm_isolate(Poly([-2, 0, 1]), 0, 2)
    with mpmath.workprec(200):
        assert abs(r.value(200) - mpmath.sqrt(2)) < mpmath.mpf(2) ** -190
