"""Verification suites run by ``mapenum verify``.

Each suite is a generator of :class:`~mapenum.appell.CheckReport` objects.
Suites take the parsed CLI namespace; the attributes read are ``valence``
(optional restriction), ``processes`` and ``deep`` (include the slow
18-dart oracle run).
"""
from __future__ import annotations

import time

import mpmath

from .appell import CheckReport
from .exact import rat_str


def _valences(args, default):
    v = getattr(args, "valence", None)
    return [v] if v is not None and v in default else ([] if v is not None else list(default))


def suite_appell(args):
    from .appell import (appell_derivative_check, binomial_identity_check, build_appell,
                         divisibility_check, generating_function_check, interlacing_check)
    from .curve import build_curve, pi_factor_check

    yield appell_derivative_check(build_appell(12))
    yield generating_function_check(12)
    yield binomial_identity_check(12)
    yield interlacing_check(8)
    fails = []
    for nu in range(1, 7):
        try:
            divisibility_check(nu)
        except ArithmeticError as exc:
            fails.append(str(exc))
    yield CheckReport("exact divisibility by (4 - y), nu <= 6", not fails, fails)
    for j in _valences(args, range(3, 12, 2)):
        yield pi_factor_check(build_curve(j))


def suite_unwinding(args):
    from .genfun import build_series_context
    from .stringpoly import unwinding_algebraic, unwinding_check

    for j in _valences(args, (3, 5)):
        ctx = build_series_context(j, 4)
        for m in range(j):
            yield unwinding_check(j, m, ctx)
            if m >= 1:
                yield unwinding_algebraic(j, m)


def suite_curve(args):
    from .curve import build_curve, conservation_residual, derivative_identities, pole_zero_structure

    for j in _valences(args, (3, 5, 7, 9, 11)):
        model = build_curve(j)
        yield derivative_identities(model)
        yield pole_zero_structure(model)
    for tvec, label in (((0, 0, 1), "j=3"), ((0, 0, 0, 1), "j=4"), ((0, 0, 0.05, 1), "mixed near j=4")):
        st = conservation_residual(tvec)
        ok = st.order >= 1.8
        yield CheckReport(f"conservation law residual order {label}", ok,
                          [] if ok else [f"observed order {st.order:.3f} < 1.8"], {"summary": st.line()})


def suite_series(args):
    from .genfun import (bernoulli_residual, build_series_context, e0_cross_check, e1_dual_check,
                         exchange_check, f1_alternative, f1_series, h1_series, h2_series,
                         string_residual, u2_from_closed, z1_from_closed)

    for j, M in ((3, 12), (5, 7), (4, 6), (6, 6)):
        if getattr(args, "valence", None) not in (None, j):
            continue
        ctx = build_series_context(j, M)
        if j % 2:
            yield string_residual(ctx)
        rep = e1_dual_check(ctx)
        ok = rep.passed and ctx.xi_order >= 12
        yield CheckReport(rep.name, ok, rep.failures + ([] if ctx.xi_order >= 12 else ["order below xi^12"]))
        yield e0_cross_check(ctx)
        if j % 2:
            yield exchange_check(ctx)
            h1 = h1_series(ctx)
            r = bernoulli_residual(ctx, h1)
            yield CheckReport(f"h1 = h0x/2 j={j}", r.is_zero(), [] if r.is_zero() else ["nonzero"])
            same = f1_alternative(ctx, "corrected") == f1_series(ctx)
            yield CheckReport(f"f1 alternative form (corrected sign) j={j}", same,
                              [] if same else ["differs from log form"])
        if j == 3:
            ok1 = z1_from_closed(ctx) == f1_series(ctx)
            ok2 = u2_from_closed(ctx) == h2_series(ctx, "derived")
            yield CheckReport("z1 closed form j=3", ok1, [] if ok1 else ["differs"])
            yield CheckReport("u2 closed form j=3", ok2, [] if ok2 else ["differs"])


def suite_discrete(args):
    from .discrete import (compare_with_series, extract_genus_coeffs, hankel_positivity,
                           hankel_recurrence, verify_string, verify_t1_toda, verify_toda_and_edge)
    from .genfun import build_series_context

    K = 4
    for j in _valences(args, (3, 4)):
        c = hankel_recurrence(j, 8, K)
        yield verify_string(c)
        yield verify_toda_and_edge(c)
        yield hankel_positivity(j, 8)
        ex = extract_genus_coeffs(j, K)
        yield compare_with_series(ex, build_series_context(j, 4 if j % 2 else 3))
    yield verify_t1_toda(8, K)


def _tally_report(j, n, expect, processes):
    from .counts import oracle_counts

    t = oracle_counts(j, n, processes=processes)
    got = {"total": t.total, "disconnected": t.disconnected}
    for g, c in enumerate(t.connected_by_genus):
        got[f"genus{g}"] = c
    fails = [f"{k}: {got.get(k, 0)} != {v}" for k, v in expect.items() if got.get(k, 0) != v]
    return t, CheckReport(f"oracle j={j} n={n}", not fails, fails, {"tally": t.summary()})


def suite_oracle(args):
    from .counts import eg_series, exponential_formula_check, oracle_counts, twolegged_series

    procs = getattr(args, "processes", 1)
    tallies = {}
    t, rep = _tally_report(3, 2, {"total": 15, "genus0": 12, "genus1": 3, "disconnected": 0}, procs)
    tallies[2] = t
    yield rep
    t, rep = _tally_report(3, 4, {"total": 10395, "disconnected": 675, "genus0": 5184, "genus1": 4536}, procs)
    tallies[4] = t
    yield rep
    if getattr(args, "deep", False):
        from math import factorial
        e0, e1, e2 = (eg_series(3, g, 3) for g in (0, 1, 2))
        f6 = factorial(6)
        exp = {"total": 34459425, "genus0": e0.coeffs[3] * f6, "genus1": e1.coeffs[3] * f6,
               "genus2": e2.coeffs[3] * f6}
        t, rep = _tally_report(3, 6, exp, procs)
        tallies[6] = t
        yield rep
    fails = exponential_formula_check(tallies)
    yield CheckReport("exponential formula (disconnected from connected)", not fails, fails)
    t2 = oracle_counts(3, 4, seed=12345)
    same = t2.connected_by_genus == tallies[4].connected_by_genus and t2.disconnected == tallies[4].disconnected
    yield CheckReport("oracle invariant under random relabelling", same, [] if same else ["tallies changed"])
    for j, m in ((3, 2), (4, 2)):
        for g in (0, 1):
            rows = twolegged_series(j, g, m)
            n = rows[-1].vertices
            lt = oracle_counts(j, n, legs=2)
            want = rows[-1].value
            got = lt.connected_by_genus[g] if g < len(lt.connected_by_genus) else 0
            yield CheckReport(f"two-legged oracle j={j} n={n} genus {g}", got == want,
                              [] if got == want else [f"{got} != {rat_str(want)}"])


def suite_even(args):
    from .counts import kappa_closed, oracle_counts
    from .genfun import build_series_context, even_Cg_constants, even_general_limit_check
    from .reference import EVEN_C2

    for j in _valences(args, (4, 6)):
        yield even_general_limit_check(build_series_context(j, 5), order=8)
    t = oracle_counts(4, 1)
    closed = {r.genus: r.value for g in (0, 1) for r in kappa_closed(4, g, 1)}
    ok = (t.total == 3 and t.connected_by_genus[:2] == [2, 1] and closed == {0: 2, 1: 1})
    yield CheckReport("j=4 single vertex: 2 genus-0, 1 genus-1 (oracle and series)", ok,
                      [] if ok else [f"oracle {t.connected_by_genus}, series {closed}"])
    t = oracle_counts(4, 2)
    closed = {r.genus: r.value for g in (0, 1) for r in kappa_closed(4, g, 2) if r.vertices == 2}
    ok = t.connected_by_genus[:2] == [closed[0], closed[1]]
    yield CheckReport("j=4 two vertices: oracle vs series", ok,
                      [] if ok else [f"oracle {t.connected_by_genus}, series {closed}"])
    c2 = even_Cg_constants(2)[0]
    yield CheckReport("C^(2) = 1/240", c2 == EVEN_C2, [] if c2 == EVEN_C2 else [rat_str(c2)])


def suite_adjudicate(args):
    from .counts import adjudicate_genus1

    adj = adjudicate_genus1(3, 4, processes=getattr(args, "processes", 1))
    ok = adj.full_matches and not adj.table_matches
    yield CheckReport("genus-one adjudication j=3 (full mode matches, residue-faithful does not)", ok,
                      [] if ok else [adj.verdict], {"report": adj.report()})


def suite_numerics(args):
    from .asymptotics import asymptotic_vs_exact, critical_data, zeta_recurrence
    from .reference import CUBIC_CRITICAL

    cd = critical_data(3, 64)
    fails = []
    with mpmath.workprec(64):
        got = {"xi2c": cd.xi2c, "y0c": cd.y0c.value(64), "z0c": cd.z0c}
        for k, f in CUBIC_CRITICAL.items():
            err = abs(got[k] - f(mpmath))
            if not err < mpmath.mpf(10) ** -12:
                fails.append(f"{k} off by {mpmath.nstr(err, 3)}")
    yield CheckReport("critical data j=3 to 1e-12 (64 bits)", not fails, fails)
    try:
        z = zeta_recurrence(cd, 6)
        yield CheckReport("zeta_g > 0 for g <= 6", True, [], {"zeta": [mpmath.nstr(v, 8) for v in z]})
    except ArithmeticError as exc:
        yield CheckReport("zeta_g > 0 for g <= 6", False, [str(exc)])
    tab = asymptotic_vs_exact(3, 2, "eg", range(3, 7), 64, cd)
    ok = tab.monotone()
    yield CheckReport("genus-2 j=3 exact/asymptotic deviation decreasing over m=3..6", ok,
                      [] if ok else [f"deviations {[mpmath.nstr(d, 4) for d in tab.deviations()]}"])


def suite_tables(args):
    from .counts import cubic_planar_formula, kappa_closed, residue_rows
    from .reference import PUBLISHED_TABLES, published

    for (j, g, mode) in PUBLISHED_TABLES:
        want = published(j, g, mode)
        t0 = time.perf_counter()
        rows = (residue_rows if mode == "residue-faithful" else kappa_closed)(j, g, len(want))
        got = [r.table_value() for r in rows]
        dt = time.perf_counter() - t0
        fails = [f"entry {i + 1}: {rat_str(a)} != {rat_str(b)}" for i, (a, b) in enumerate(zip(got, want)) if a != b]
        if dt >= 10:
            fails.append(f"took {dt:.1f} s")
        yield CheckReport(f"published table j={j} g={g} ({mode})", not fails, fails, {"seconds": round(dt, 3)})
    rows = kappa_closed(3, 0, 8)
    fails = [f"m={m}" for m, r in enumerate(rows, 1) if r.table_value() != cubic_planar_formula(m)]
    yield CheckReport("planar cubic Gamma formula m <= 8", not fails, fails)


SUITES = {
    "appell": suite_appell,
    "unwinding": suite_unwinding,
    "curve": suite_curve,
    "series": suite_series,
    "discrete": suite_discrete,
    "oracle": suite_oracle,
    "even": suite_even,
    "adjudicate-genus1": suite_adjudicate,
    "numerics": suite_numerics,
    "tables": suite_tables,
}


def run_suite(name: str, args):
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    yield from SUITES[name](args)
