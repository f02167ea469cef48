"""Count tables, residue extraction and the dart-matching oracle."""
import json
from fractions import Fraction
from math import factorial

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mapenum.counts import (MAX_DARTS, CountRow, CountTable, adjudicate_genus1, cubic_planar_formula,
                            double_factorial, exponential_formula_check, kappa_closed, kappa_residue,
                            oracle_counts, oracle_rows, residue_rows, twolegged_series)
from mapenum.reference import published


# -- closed-form and residue modes -------------------------------------------

def test_closed_form_definition():
    rows = kappa_closed(3, 0, 3)
    assert [r.vertices for r in rows] == [2, 4, 6]
    assert [r.value for r in rows] == [12, 5184, 9797760]
    assert rows[0].table_value() == 2


@pytest.mark.parametrize("j,g,mode", [(3, 0, "closed-form"), (5, 0, "closed-form"), (3, 2, "closed-form"),
                                      (3, 1, "residue-faithful"), (5, 1, "residue-faithful")])
def test_published_tables(j, g, mode):
    want = published(j, g, mode)
    fn = residue_rows if mode == "residue-faithful" else kappa_closed
    assert [r.table_value() for r in fn(j, g, len(want))] == want


def test_residue_examples():
    # published: 3/2, 135 (j = 3) and 90 (j = 5)
    assert kappa_residue(3, 1, 1) == Fraction(3, 2)
    assert kappa_residue(3, 1, 2) == 135
    assert kappa_residue(5, 1, 1) == 90


@pytest.mark.parametrize("j", [3, 5, 7])
def test_residue_equals_series_at_genus_zero(j):
    # the Lagrange residue of de0/dy and the series coefficient are the same number
    assert [r.value for r in residue_rows(j, 0, 4)] == [r.value for r in kappa_closed(j, 0, 4)]


def test_gamma_formula_exact_and_numeric():
    rows = kappa_closed(3, 0, 8)
    for m, r in enumerate(rows, 1):
        exact = cubic_planar_formula(m)
        assert r.table_value() == exact
        # derived: floating evaluation of the Gamma expression
        with mpmath.workdps(40):
            num = (mpmath.mpf(3) ** (2 * m) * mpmath.mpf(2) ** (3 * m) * mpmath.gamma(mpmath.mpf(3 * m) / 2)
                   / (3 * m * mpmath.gamma(mpmath.mpf(m) / 2) * mpmath.gamma(3 + m)))
            assert abs(num - mpmath.mpf(exact.numerator) / exact.denominator) < mpmath.mpf(10) ** -25 * num


def test_even_counts_are_nonnegative():
    for g in (0, 1):
        assert all(r.value >= 0 for r in kappa_closed(4, g, 5))
        assert all(r.value >= 0 for r in kappa_closed(6, g, 4))


def test_unsupported_genus():
    with pytest.raises(ValueError, match="out of printed closed forms"):
        kappa_closed(5, 2, 3)
    with pytest.raises(ValueError, match="out of printed closed forms"):
        kappa_closed(4, 2, 3)


# -- oracle ---------------------------------------------------------------

def test_double_factorial():
    assert [double_factorial(n) for n in (-1, 1, 3, 5, 23)] == [1, 1, 3, 15, 316234143225]


def test_oracle_small_cases():
    # derived: exhaustive enumeration
    t = oracle_counts(3, 2)
    assert (t.total, t.connected_by_genus, t.disconnected) == (15, [12, 3], 0)
    t = oracle_counts(3, 4)
    assert (t.total, t.disconnected) == (10395, 675)
    assert t.connected_by_genus == [5184, 4536]
    t = oracle_counts(4, 1)
    assert (t.total, t.connected_by_genus) == (3, [2, 1])


@pytest.mark.parametrize("j,n", [(3, 2), (3, 4), (4, 1), (4, 2), (4, 3), (5, 2), (6, 2)])
def test_tally_invariants(j, n):
    t = oracle_counts(j, n)
    assert sum(t.connected_by_genus) + t.disconnected == t.total == double_factorial(j * n - 1)
    assert sum(t.euler_all.values()) == t.total


@pytest.mark.parametrize("j,nmax", [(4, 3), (5, 2), (6, 2)])
def test_oracle_matches_series(j, nmax):
    t = oracle_counts(j, nmax)
    for g in (0, 1):
        want = [r.value for r in kappa_closed(j, g, nmax if j % 2 == 0 else nmax // 2) if r.vertices == nmax]
        assert t.connected_by_genus[g] == want[0]


def test_quartic_four_vertices_parallel():
    a = oracle_counts(4, 4)
    b = oracle_counts(4, 4, processes=2)
    assert a == b
    assert a.connected_by_genus[:2] == [kappa_closed(4, g, 4)[-1].value for g in (0, 1)]


@given(st.integers(0, 2 ** 31))
def test_relabelling_invariance(seed):
    base = oracle_counts(3, 4)
    t = oracle_counts(3, 4, seed=seed)
    assert t.connected_by_genus == base.connected_by_genus and t.euler_all == base.euler_all


def test_exponential_formula():
    assert exponential_formula_check({n: oracle_counts(4, n) for n in (1, 2, 3)}) == []
    assert exponential_formula_check({n: oracle_counts(3, n) for n in (2, 4)}) == []


def test_two_legged_oracle():
    for j, n, g in ((3, 2, 0), (3, 4, 0), (3, 4, 1), (4, 1, 0), (4, 2, 0), (4, 2, 1)):
        row = [r for r in twolegged_series(j, g, n) if r.vertices == n][0]
        t = oracle_counts(j, n, legs=2)
        assert t.connected_by_genus[g] == row.value


def test_oracle_rejections():
    with pytest.raises(ValueError, match="cannot be perfectly matched"):
        oracle_counts(3, 3)
    with pytest.raises(ValueError, match="enumeration bound"):
        oracle_counts(3, MAX_DARTS // 3 + 2)
    with pytest.raises(ValueError, match="budget"):
        oracle_counts(3, 6, budget=10 ** 6)


def test_adjudication_report():
    adj = adjudicate_genus1(3, 4)
    assert adj.full_matches and not adj.table_matches
    text = adj.report()
    assert "4536" in text and "9720" in text and "verdict" in text


# -- tables ---------------------------------------------------------------

def test_table_exports():
    tab = CountTable().extend(kappa_closed(3, 1, 2)).extend(oracle_rows(oracle_counts(3, 2)))
    csv = tab.to_csv().splitlines()
    assert csv[0] == "valence,genus,vertices,value_num,value_den,mode,note"
    doc = json.loads(tab.to_json())
    assert {d["mode"] for d in doc} == {"closed-form", "oracle"}
    assert any(d["table_value"] == "1/2" for d in doc)
    assert CountRow(3, 0, 4, Fraction(5184), "oracle").table_value() == Fraction(5184, 3 * factorial(4))
