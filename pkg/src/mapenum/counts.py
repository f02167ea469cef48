"""Map counts: series coefficients, residue extraction and a brute-force oracle.

Conventions
-----------
For n labelled j-valent vertices the raw count of genus-g maps is

    kappa_g(n) = n! * [(-xi)**n] e_g(xi)          (closed-form mode)

(for odd j only even n occur, so the sign is immaterial).  Published tables
divide by j once more: ``table = kappa / (j * n!)``; both numbers are always
reported.  The residue mode computes the same coefficient by Lagrange
inversion on the curve xi**2 = y Shat**(j-2) / (j**2 B**j):

    [xi**(2m)] e = (1/m) [y**(m-1)] e'(y) * (j**2 B**j / Shat**(j-2))**m.

The oracle enumerates all perfect matchings iota of the j n darts against
fixed rotations sigma (one j-cycle per vertex); faces are cycles of
sigma o iota and the genus of a connected gluing follows from Euler's formula
V - E + F = 2 - 2g.
"""
from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod

import numpy as np

from .curve import build_curve
from .exact import RatFn, Series, rat_str
from .genfun import (Y, build_series_context, e0_closed, e1_closed, e2_closed_j3,
                     f1_series)

MODES = ("closed-form", "residue-faithful", "oracle")
MAX_DARTS = 24
DEFAULT_MATCHING_BUDGET = 10 ** 9


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CountRow:
    valence: int
    genus: int
    vertices: int
    value: Fraction
    mode: str
    note: str = ""

    def table_value(self) -> Fraction:
        """value / (valence * vertices!), the published normalization."""
        return Fraction(self.value) / (self.valence * factorial(self.vertices))


@dataclass
class CountTable:
    rows: list = field(default_factory=list)

    def extend(self, rows):
        self.rows.extend(rows)
        return self

    def sorted(self) -> "CountTable":
        order = {m: i for i, m in enumerate(MODES)}
        return CountTable(sorted(self.rows, key=lambda r: (r.valence, r.genus, r.vertices,
                                                            order.get(r.mode, 99), r.note)))

    def select(self, **kw) -> list:
        return [r for r in self.rows if all(getattr(r, k) == v for k, v in kw.items())]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["valence", "genus", "vertices", "value_num", "value_den", "mode", "note"])
        for r in self.sorted().rows:
            v = Fraction(r.value)
            w.writerow([r.valence, r.genus, r.vertices, v.numerator, v.denominator, r.mode, r.note])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = [{"valence": r.valence, "genus": r.genus, "vertices": r.vertices,
                "value": rat_str(r.value), "value_num": Fraction(r.value).numerator,
                "value_den": Fraction(r.value).denominator,
                "table_value": rat_str(r.table_value()), "mode": r.mode, "note": r.note}
               for r in self.sorted().rows]
        return json.dumps(doc, indent=2) + "\n"


def _supported(j: int, g: int) -> None:
    ok = (g in (0, 1)) or (g == 2 and j == 3)
    if j < 3 or not ok:
        raise ValueError(f"(j={j}, g={g}) is out of printed closed forms")


@lru_cache(maxsize=None)
def _context(j: int, M: int):
    return build_series_context(j, M)


def eg_series(j: int, g: int, M: int, e1_mode: str = "full") -> Series:
    """e_g as a series: in xi2 through xi2**M (odd j) or in xi through xi**(2M) (even j)."""
    _supported(j, g)
    ctx = _context(j, M)
    if g == 0:
        return ctx.e0()
    if g == 1:
        return ctx.e1(e1_mode)
    return ctx.e2()


def kappa_closed(j: int, g: int, mmax: int, e1_mode: str = "full") -> list[CountRow]:
    """Rows n! [(-xi)^n] e_g for n = 2, 4, .., 2 mmax (odd j) or n = 1..mmax (even j)."""
    _supported(j, g)
    if mmax < 1:
        raise ValueError("mmax must be positive")
    rows = []
    if j % 2:
        s = eg_series(j, g, max(mmax, 2), e1_mode)
        for m in range(1, mmax + 1):
            n = 2 * m
            rows.append(CountRow(j, g, n, s.coeffs[m] * factorial(n), "closed-form",
                                 f"e{g}" + (f" {e1_mode}" if g == 1 else "")))
    else:
        s = eg_series(j, g, (mmax + 1) // 2 + 1, e1_mode)
        for n in range(1, mmax + 1):
            rows.append(CountRow(j, g, n, s.coeffs[n] * (-1) ** n * factorial(n), "closed-form",
                                 f"e{g}"))
    return rows


def printed_table(rows: list[CountRow]) -> list[Fraction]:
    return [r.table_value() for r in rows]


# ---------------------------------------------------------------------------
# Lagrange-inversion residues
# ---------------------------------------------------------------------------

def _deg_dy(j: int, g: int) -> RatFn:
    if g == 0:
        return e0_closed(j).deriv()
    if g == 1:
        return e1_closed(j, "table").deriv()
    if g == 2 and j == 3:
        return e2_closed_j3().deriv()
    raise ValueError(f"(j={j}, g={g}) has no residue integrand")


def kappa_residue(j: int, g: int, m: int) -> Fraction:
    """[y^(m-1)] (1/m) e_g'(y) j^(2m) B^(jm) / Shat^((j-2)m), divided by j (table value).

    g = 1 uses the printed derivative (1/24)(2 B' Pi - B Pi')/(B Pi), which has
    no log z0 term; g = 2 (j = 3) uses the genus-two closed form.
    """
    if j % 2 == 0 or j < 3:
        raise ValueError("residue extraction is defined for odd j >= 3")
    if m < 1:
        raise ValueError("m must be positive")
    model = build_curve(j)
    d = _deg_dy(j, g)
    B = model.B12
    Sh = model.Shat
    phi = RatFn(B ** (j * m) * (j ** (2 * m)), Sh ** ((j - 2) * m))
    integrand = d * phi
    c = integrand.to_series(m - 1, Y).coeffs[m - 1]
    return c / m / j


def residue_rows(j: int, g: int, mmax: int) -> list[CountRow]:
    rows = []
    for m in range(1, mmax + 1):
        n = 2 * m
        rows.append(CountRow(j, g, n, kappa_residue(j, g, m) * j * factorial(n),
                             "residue-faithful",
                             "printed de1/dy (no log z0 term)" if g == 1 else f"e{g}'(y)"))
    return rows


# ---------------------------------------------------------------------------
# exact Gamma closed formula for planar cubic maps
# ---------------------------------------------------------------------------

def _gamma_half(k: int) -> tuple[Fraction, int]:
    """Gamma(k/2) = r * sqrt(pi)**e with e in {0, 1}."""
    if k <= 0:
        raise ValueError("nonpositive argument")
    if k % 2 == 0:
        return Fraction(factorial(k // 2 - 1)), 0
    # Gamma(p + 1/2) = (2p)! / (4^p p!) sqrt(pi)
    p = (k - 1) // 2
    return Fraction(factorial(2 * p), 4 ** p * factorial(p)), 1


def cubic_planar_formula(m: int) -> Fraction:
    """3^(2m) 2^(3m) Gamma(3m/2) / (3m Gamma(m/2) Gamma(3+m)), exactly."""
    num, e1 = _gamma_half(3 * m)
    den, e2 = _gamma_half(m)
    if e1 != e2:
        raise ArithmeticError("sqrt(pi) does not cancel")
    return Fraction(3 ** (2 * m) * 2 ** (3 * m), 3 * m) * num / den / factorial(m + 2)


# ---------------------------------------------------------------------------
# brute-force dart matching oracle
# ---------------------------------------------------------------------------

@dataclass
class MatchingTally:
    j: int
    n_vertices: int
    total: int
    connected_by_genus: list
    disconnected: int
    euler_all: dict = field(default_factory=dict)        # chi -> count (all gluings)
    euler_connected: dict = field(default_factory=dict)  # chi -> count (connected)
    legs: int = 0

    def connected(self) -> int:
        return sum(self.connected_by_genus)

    def summary(self) -> str:
        gen = ", ".join(f"g{g}={c}" for g, c in enumerate(self.connected_by_genus))
        extra = f" + {self.legs} legs" if self.legs else ""
        return (f"j={self.j} n={self.n_vertices}{extra}: total {self.total}, connected [{gen}], "
                f"disconnected {self.disconnected}")


def double_factorial(n: int) -> int:
    return prod(range(n, 0, -2)) if n > 0 else 1


@lru_cache(maxsize=8)
def _all_matchings(r: int) -> np.ndarray:
    """All perfect matchings of positions 0..r-1 as partner arrays, shape ((r-1)!!, r)."""
    if r == 0:
        return np.zeros((1, 0), dtype=np.int8)
    rows = []

    def rec(part: list, free: list):
        if not free:
            rows.append(part[:])
            return
        a = free[0]
        for i in range(1, len(free)):
            b = free[i]
            part[a], part[b] = b, a
            rec(part, free[1:i] + free[i + 1:])
        part[a] = part[free[0]] = -1

    rec([-1] * r, list(range(r)))
    return np.array(rows, dtype=np.int8)


def _branches(D: int, depth: int) -> list[tuple]:
    """Partial matchings of the first ``depth`` smallest-unmatched steps."""
    out = []

    def rec(pairs: tuple, free: tuple, k: int):
        if k == 0 or not free:
            out.append((pairs, free))
            return
        a = free[0]
        for i in range(1, len(free)):
            rec(pairs + ((a, free[i]),), free[1:i] + free[i + 1:], k - 1)

    rec((), tuple(range(D)), depth)
    return out


def _rotation(sizes: tuple, seed: int | None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    D = sum(sizes)
    sigma = np.empty(D, dtype=np.int32)
    vert = np.empty(D, dtype=np.int32)
    starts = np.cumsum((0,) + sizes[:-1])
    rng = np.random.default_rng(seed) if seed is not None else None
    for v, (s, k) in enumerate(zip(starts, sizes)):
        darts = np.arange(s, s + k, dtype=np.int32)
        if rng is not None:
            darts = rng.permutation(darts)
        for i in range(k):
            sigma[darts[i]] = darts[(i + 1) % k]
        vert[s:s + k] = v
    return sigma, vert, starts


def _gather(values: np.ndarray, index: np.ndarray, offset: np.ndarray) -> np.ndarray:
    """Row-wise values[r, index[r, c]] via one flat gather (``offset`` = row starts)."""
    return values.ravel()[(index + offset).ravel()].reshape(index.shape)


def _cycle_count(perm: np.ndarray) -> np.ndarray:
    """Number of cycles per row of a batch of permutations (pointer doubling)."""
    R, D = perm.shape
    offset = (np.arange(R, dtype=np.int32) * D)[:, None]
    idx = np.broadcast_to(np.arange(D, dtype=np.int32), (R, D))
    low = idx.copy()
    p = perm
    span = 1
    while span < D:
        low = np.minimum(low, _gather(low, p, offset))
        span *= 2
        if span < D:
            p = _gather(p, p, offset)
    return (low == idx).sum(axis=1)


def _components(iota: np.ndarray, vert: np.ndarray, starts: np.ndarray, V: int) -> np.ndarray:
    """Connected-component count of the vertex graph per row."""
    R = iota.shape[0]
    offset = (np.arange(R, dtype=np.int32) * V)[:, None]
    lab = np.broadcast_to(np.arange(V, dtype=np.int32), (R, V)).copy()
    nb_vert = vert[iota]                       # vertex at the other end of each dart
    D = iota.shape[1]
    uniform = D % V == 0 and np.array_equal(starts, np.arange(0, D, D // V))
    for _ in range(max(V - 1, 0)):
        nb = _gather(lab, nb_vert, offset)
        low = nb.reshape(R, V, D // V).min(axis=2) if uniform else np.minimum.reduceat(nb, starts, axis=1)
        new = np.minimum(lab, low)
        if np.array_equal(new, lab):
            break
        lab = new
    return (lab == np.arange(V, dtype=np.int32)).sum(axis=1)


def _tally_branch(args) -> dict:
    sizes, seed, pairs, free = args
    sigma, vert, starts = _rotation(sizes, seed)
    D, V = sum(sizes), len(sizes)
    E = D // 2
    base = _all_matchings(len(free))
    free_arr = np.array(free, dtype=np.int32)
    iota = np.empty((base.shape[0], D), dtype=np.int32)
    for a, b in pairs:
        iota[:, a] = b
        iota[:, b] = a
    if len(free):
        iota[:, free_arr] = free_arr[base]
    faces = _cycle_count(sigma[iota])
    comps = _components(iota, vert, starts, V)
    # key = comps * (D + 1) + faces, both bounded by D
    hist = np.bincount(comps * (D + 1) + faces, minlength=(V + 1) * (D + 1))
    out: dict = {}
    for key in np.nonzero(hist)[0]:
        c, f = divmod(int(key), D + 1)
        out[(c, V - E + f)] = int(hist[key])
    return out


def oracle_counts(j: int, n_vertices: int, legs: int = 0, processes: int | None = None,
                  seed: int | None = None, budget: int = DEFAULT_MATCHING_BUDGET) -> MatchingTally:
    """Exhaustive gluing of n j-valent vertices (plus ``legs`` univalent ones).

    ``seed`` randomizes the cyclic order inside each rotation (tallies must
    not change); ``processes`` > 1 fans branches of the pairing tree out to
    worker processes, merged in a fixed order.
    """
    if j < 1 or n_vertices < 0 or legs < 0:
        raise ValueError("valence, vertex and leg counts must be nonnegative (valence positive)")
    D = j * n_vertices + legs
    if D % 2:
        raise ValueError(f"{D} darts cannot be perfectly matched")
    if D > MAX_DARTS:
        raise ValueError(f"{D} darts exceed the enumeration bound {MAX_DARTS} "
                         f"({double_factorial(D - 1):.3e} matchings)")
    total = double_factorial(D - 1)
    if total > budget:
        raise ValueError(f"{total:.3e} matchings exceed the budget {budget:.3e}")
    sizes = tuple([j] * n_vertices + [1] * legs)
    if D == 0:
        return MatchingTally(j, n_vertices, 1, [], 0, {0: 1}, {}, legs)
    depth = max(0, (D - 14 + 1) // 2)
    work = [(sizes, seed, p, f) for p, f in _branches(D, depth)]
    if processes and processes > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=processes) as ex:
            parts = list(ex.map(_tally_branch, work, chunksize=max(1, len(work) // (4 * processes))))
    else:
        parts = [_tally_branch(w) for w in work]
    merged: dict = {}
    for part in parts:
        for k, v in part.items():
            merged[k] = merged.get(k, 0) + v
    if sum(merged.values()) != total:
        raise AssertionError("matching enumeration is incomplete")
    euler_all: dict = {}
    euler_conn: dict = {}
    by_genus: dict = {}
    disconnected = 0
    for (c, chi), v in sorted(merged.items()):
        euler_all[chi] = euler_all.get(chi, 0) + v
        if c == 1:
            euler_conn[chi] = euler_conn.get(chi, 0) + v
            g = (2 - chi) // 2
            by_genus[g] = by_genus.get(g, 0) + v
        else:
            disconnected += v
    gmax = max(by_genus) if by_genus else -1
    return MatchingTally(j, n_vertices, total, [by_genus.get(g, 0) for g in range(gmax + 1)],
                         disconnected, dict(sorted(euler_all.items())),
                         dict(sorted(euler_conn.items())), legs)


def default_processes() -> int:
    return max(1, min(8, os.cpu_count() or 1))


def oracle_rows(tally: MatchingTally) -> list[CountRow]:
    return [CountRow(tally.j, g, tally.n_vertices, Fraction(c), "oracle",
                     "connected labelled gluings" + (f", {tally.legs} legs" if tally.legs else ""))
            for g, c in enumerate(tally.connected_by_genus)]


def exponential_formula_check(tallies: dict[int, MatchingTally]) -> list[str]:
    """All gluings = set partitions of the labelled vertices into connected pieces.

    T_n(q) = sum_k C(n-1, k-1) C_k(q) T_{n-k}(q), with q marking Euler
    characteristic.  ``tallies`` must hold every n = 1..max with j n even.
    Returns mismatch descriptions (empty when consistent).
    """
    nmax = max(tallies)
    j = tallies[nmax].j
    conn = {n: ({} if (j * n) % 2 else tallies[n].euler_connected) for n in range(1, nmax + 1)}
    allt = {0: {0: 1}}
    fails = []
    for n in range(1, nmax + 1):
        acc: dict = {}
        for k in range(1, n + 1):
            w = comb(n - 1, k - 1)
            for x1, v1 in conn[k].items():
                for x2, v2 in allt[n - k].items():
                    acc[x1 + x2] = acc.get(x1 + x2, 0) + w * v1 * v2
        allt[n] = dict(sorted(acc.items()))
        if (j * n) % 2 == 0 and allt[n] != tallies[n].euler_all:
            fails.append(f"n={n}: predicted {allt[n]} vs enumerated {tallies[n].euler_all}")
    return fails


# ---------------------------------------------------------------------------
# genus-one adjudication
# ---------------------------------------------------------------------------

@dataclass
class Adjudication:
    j: int
    lines: list
    verdict: str
    full_matches: bool
    table_matches: bool

    def report(self) -> str:
        return "\n".join(self.lines + [f"verdict: {self.verdict}"]) + "\n"


def adjudicate_genus1(j: int = 3, nmax: int = 4, processes: int | None = None) -> Adjudication:
    """Compare both genus-one modes against connected genus-one oracle tallies."""
    if j % 2 == 0:
        raise ValueError("adjudication is defined for odd valence")
    M = max(1, nmax // 2)
    full = eg_series(j, 1, max(M, 2), "full")
    table = eg_series(j, 1, max(M, 2), "table")
    e0 = eg_series(j, 0, max(M, 2))
    lines = [f"genus-one adjudication at j={j}"]
    full_ok = table_ok = True
    for m in range(1, M + 1):
        n = 2 * m
        t = oracle_counts(j, n, processes=processes)
        g1 = t.connected_by_genus[1] if len(t.connected_by_genus) > 1 else 0
        g0 = t.connected_by_genus[0] if t.connected_by_genus else 0
        fv, tv, ev = full.coeffs[m], table.coeffs[m], e0.coeffs[m]
        nf = factorial(n)
        higher = sum(t.connected_by_genus[2:])
        lines.append(
            f"n={n}: oracle total {t.total} = disconnected {t.disconnected} + genus0 {g0} + genus1 {g1}"
            f" + higher {higher}")
        lines.append(f"  genus0: e0 coefficient {rat_str(ev)} * {n}! = {rat_str(ev * nf)}"
                     f" ({'match' if ev * nf == g0 else 'MISMATCH'})")
        lines.append(f"  genus1 full:  {rat_str(fv)} * {n}! = {rat_str(fv * nf)}"
                     f" ({'match' if fv * nf == g1 else 'differs'})")
        lines.append(f"  genus1 table: {rat_str(tv)} * {n}! = {rat_str(tv * nf)}"
                     f" ({'match' if tv * nf == g1 else 'differs'})")
        full_ok &= fv * nf == g1
        table_ok &= tv * nf == g1
    if full_ok and not table_ok:
        verdict = ("the full-mode e1 (with the -1/12 log z0 term) matches the oracle; "
                   "the residue-faithful (printed de1/dy) counts do not")
    elif table_ok and not full_ok:
        verdict = "the residue-faithful e1 matches the oracle; the full mode does not"
    elif full_ok and table_ok:
        verdict = "both modes match the oracle"
    else:
        verdict = "neither mode matches the oracle; raw data above"
    return Adjudication(j, lines, verdict, full_ok, table_ok)


# ---------------------------------------------------------------------------
# two-legged maps
# ---------------------------------------------------------------------------

def twolegged_series(j: int, g: int, mmax: int) -> list[CountRow]:
    """m! [(-xi)^m] f_g at x = 1 (f0 = z0, f1 = z1): labelled maps with two distinguished legs."""
    if g not in (0, 1):
        raise ValueError("two-legged counts are available for g in {0, 1}")
    if j < 3:
        raise ValueError("valence must be at least 3")
    M = mmax // 2 + 2
    ctx = _context(j, M)
    s = ctx.z0_xi if g == 0 else f1_series(ctx)
    rows = []
    for m in range(0, mmax + 1):
        if m > s.order:
            break
        rows.append(CountRow(j, g, m, s.coeffs[m] * (-1) ** m * factorial(m), "closed-form",
                             f"two-legged f{g}"))
    return rows
