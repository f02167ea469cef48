"""Finite-n orthogonal polynomial oracle.

For the weight exp(-N (lambda**2/2 + t lambda**j)) the moments are formal
power series in t whose coefficients are Gaussian moments:

    m_k(t) = sum_i (-t)**i / i! * (k + j i - 1)!! * eps**((k + j i)/2 - i),    eps = 1/N,

(zero when k + j i is odd; the sqrt(2 pi / N) prefactor cancels in every
ratio and is dropped).  Hankel determinants of these series give

    h_n = D_{n+1} / D_n,        b_n**2 = h_n / h_{n-1},

and the diagonal recurrence coefficients come from the shifted minors

    a_n = Dhat_{n+1}/D_{n+1} - Dhat_n/D_n,

where Dhat_k replaces the last column of the k x k Hankel matrix by the
next moment column.  A second, independent route differentiates in a
linear coupling t1 (dual numbers): a_n = -eps d/dt1 log h_n.

N is an exact rational; the genus expansion is read off by sampling N = n
over several n and fitting polynomials in eps.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .appell import CheckReport
from .exact import Series, rat_str

T = "t"


def _dfact(n: int) -> int:
    """(n)!! for odd n >= -1."""
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def moments(j: int, kmax: int, K: int, N) -> list[Series]:
    """m_0..m_kmax as series in t through t**K at coupling N (exact)."""
    N = Fraction(N)
    eps = 1 / N
    out = []
    for k in range(kmax + 1):
        c = []
        for i in range(K + 1):
            p = k + j * i
            if p % 2:
                c.append(Fraction(0))
                continue
            c.append(Fraction((-1) ** i, factorial(i)) * _dfact(p - 1) * eps ** (p // 2 - i))
        out.append(Series(c, K, T))
    return out


def moments_t1(j: int, kmax: int, K: int, N) -> list[tuple[Series, Series]]:
    """(m_k, d m_k / d t1 at t1 = 0) with d m_k/d t1 = -N m_{k+1}."""
    m = moments(j, kmax + 1, K, N)
    N = Fraction(N)
    return [(m[k], m[k + 1] * (-N)) for k in range(kmax + 1)]


def leading_minors(mat: list[list[Series]]) -> list[Series]:
    """D_1..D_n of a series matrix by elimination without pivoting.

    Every pivot has nonzero constant term (Gaussian positivity at t = 0), so
    it is invertible in the series ring; a vanishing pivot aborts.  The last
    pivot is never inverted, so the full determinant may vanish at t = 0.
    """
    n = len(mat)
    a = [row[:] for row in mat]
    dets = []
    acc = None
    for k in range(n):
        piv = a[k][k]
        acc = piv if acc is None else acc * piv
        dets.append(acc)
        if k == n - 1:
            break
        if piv.coeffs[0] == 0:
            raise ArithmeticError(f"vanishing Hankel pivot at size {k + 1}")
        inv = piv.inverse()
        for i in range(k + 1, n):
            if a[i][k].is_zero():
                continue
            f = a[i][k] * inv
            for c in range(k + 1, n):
                a[i][c] = a[i][c] - f * a[k][c]
    return dets


def _det(mat: list[list[Series]]) -> Series:
    return leading_minors(mat)[-1]


def _hankel(m: list[Series], n: int, shift_last: bool = False) -> list[list[Series]]:
    rows = []
    for i in range(n):
        row = [m[i + c] for c in range(n)]
        if shift_last:
            row[-1] = m[i + n]
        rows.append(row)
    return rows


@dataclass(frozen=True)
class Dual:
    """a + b * d with d**2 = 0, over truncated series."""

    a: Series
    b: Series

    def __add__(self, o):
        return Dual(self.a + o.a, self.b + o.b)

    def __sub__(self, o):
        return Dual(self.a - o.a, self.b - o.b)

    def __mul__(self, o):
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    def inverse(self):
        ia = self.a.inverse()
        return Dual(ia, -(self.b * ia * ia))

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()


def _dual_minors(mat: list[list[Dual]]) -> list[Dual]:
    n = len(mat)
    a = [row[:] for row in mat]
    dets, acc = [], None
    for k in range(n):
        piv = a[k][k]
        if piv.a.coeffs[0] == 0:
            raise ArithmeticError(f"vanishing Hankel pivot at size {k + 1}")
        acc = piv if acc is None else acc * piv
        dets.append(acc)
        inv = piv.inverse()
        for i in range(k + 1, n):
            if a[i][k].is_zero():
                continue
            f = a[i][k] * inv
            for c in range(k + 1, n):
                a[i][c] = a[i][c] - f * a[k][c]
    return dets


@dataclass
class TSeriesCoeff:
    """Recurrence coefficients a_n, b_n**2 (n = 0..nmax) as series in t at fixed N."""

    j: int
    K: int
    N: Fraction
    nmax: int
    a: list = field(default_factory=list)
    b2: list = field(default_factory=list)
    h: list = field(default_factory=list)


def hankel_recurrence(j: int, nmax: int, K: int, N=None) -> TSeriesCoeff:
    """a_0..a_nmax and b_0^2..b_nmax^2 (b_0^2 = 0) through t**K.

    ``N`` defaults to nmax (so that x = n/N = 1 at the top index).
    """
    if j < 1:
        raise ValueError("valence must be positive")
    N = Fraction(nmax if N is None else N)
    size = nmax + 2
    m = moments(j, 2 * size + 1, K, N)
    D = leading_minors(_hankel(m, size))                      # D_1..D_size
    Dh = [_det(_hankel(m, k, shift_last=True)) for k in range(1, size + 1)]
    one = Series.const(1, K, T)
    Dfull = [one] + D                                          # D_0..D_size
    h = [Dfull[n + 1] / Dfull[n] for n in range(size)]
    b2 = [Series([], K, T)] + [h[n] / h[n - 1] for n in range(1, nmax + 1)]
    s = [Series([], K, T)] + [Dh[k - 1] / D[k - 1] for k in range(1, size + 1)]
    a = [s[n + 1] - s[n] for n in range(nmax + 1)]
    return TSeriesCoeff(j, K, N, nmax, a, b2, h[: nmax + 1])


def a_via_t1(j: int, nmax: int, K: int, N=None) -> list[Series]:
    """a_n = -eps d/dt1 log h_n from dual-number Hankel minors."""
    N = Fraction(nmax if N is None else N)
    size = nmax + 2
    mm = moments_t1(j, 2 * size, K, N)
    duals = [Dual(a, b) for a, b in mm]
    mat = [[duals[i + c] for c in range(size)] for i in range(size)]
    D = _dual_minors(mat)
    one = Dual(Series.const(1, K, T), Series([], K, T))
    Dfull = [one] + D
    out = []
    for n in range(nmax + 1):
        hn = Dfull[n + 1] * Dfull[n].inverse()
        dlog = hn.b * hn.a.inverse()
        out.append(dlog * (-1 / N))
    return out


# ---------------------------------------------------------------------------
# tridiagonal operator and Motzkin path sums
# ---------------------------------------------------------------------------

def _lmatrix(c: TSeriesCoeff, size: int):
    """Dense truncated L with L[n][n+1] = 1, L[n][n] = a_n, L[n][n-1] = b_n**2."""
    K = c.K
    zero = Series([], K, T)
    one = Series.const(1, K, T)
    L = [[zero] * size for _ in range(size)]
    for n in range(size):
        L[n][n] = c.a[n]
        if n + 1 < size:
            L[n][n + 1] = one
        if n >= 1:
            L[n][n - 1] = c.b2[n]
    return L


def _matmul(A, B):
    n = len(A)
    zero = Series([], A[0][0].order, T)
    out = [[zero] * n for _ in range(n)]
    for i in range(n):
        for k in range(max(0, i - 20), n):
            aik = A[i][k]
            if aik.is_zero():
                continue
            row = out[i]
            Bk = B[k]
            for c in range(n):
                if not Bk[c].is_zero():
                    row[c] = row[c] + aik * Bk[c]
    return out


def lpowers(c: TSeriesCoeff, pmax: int):
    size = c.nmax + 1
    L = _lmatrix(c, size)
    pw = {1: L}
    for p in range(2, pmax + 1):
        pw[p] = _matmul(pw[p - 1], L)
    return pw


def _first_bad(series: Series, upto: int | None = None) -> int | None:
    for k, v in enumerate(series.coeffs):
        if upto is not None and k > upto:
            break
        if v != 0:
            return k
    return None


def verify_string(c: TSeriesCoeff) -> CheckReport:
    """0 = a_n + j t (L^{j-1})_{nn}, n eps = b_n^2 + j t (L^{j-1})_{n,n-1} for interior n."""
    j = c.j
    pw = lpowers(c, max(j - 1, 1))
    Lp = pw[j - 1] if j > 1 else None
    t = Series.gen(c.K, T)
    eps = 1 / c.N
    fails = []
    interior = range(1, c.nmax - j + 2)
    for n in interior:
        d = Lp[n][n] if Lp else Series.const(1, c.K, T)
        o = Lp[n][n - 1] if Lp else Series([], c.K, T)
        r1 = c.a[n] + t * d * j
        r2 = c.b2[n] + t * o * j - n * eps
        for tag, r in (("diagonal", r1), ("subdiagonal", r2)):
            k = _first_bad(r)
            if k is not None:
                fails.append(f"{tag} string equation n={n} at t^{k}")
    return CheckReport(f"discrete string equations j={j} N={rat_str(c.N)}", not fails, fails,
                       {"interior": list(interior)})


def verify_toda_and_edge(c: TSeriesCoeff) -> CheckReport:
    """Toda flow in t (Motzkin form) and the edge Toda equations, interior n."""
    j = c.j
    pw = lpowers(c, j)
    Lj = pw[j]
    eps = 1 / c.N
    top = c.K - 1
    fails = []
    interior = range(2, c.nmax - j)
    for n in interior:
        a, b2 = c.a, c.b2
        lhs_a = a[n].deriv() * eps
        rhs_a = (Lj[n][n - 1] - Lj[n + 1][n]).truncate(top)
        lhs_b = b2[n].deriv() * eps
        rhs_b = (Lj[n][n - 2] - Lj[n + 1][n - 1] + (a[n - 1] - a[n]) * Lj[n][n - 1]).truncate(top)
        for tag, l, r in (("toda a", lhs_a, rhs_a), ("toda b", lhs_b, rhs_b)):
            k = _first_bad(l - r)
            if k is not None:
                fails.append(f"{tag} n={n} at t^{k}")
        ea = (a[n] + a[n].euler() * j) * eps
        ra = a[n + 1] * b2[n + 1] - a[n] * b2[n] + a[n] * b2[n + 1] - a[n - 1] * b2[n]
        eb = (b2[n] * 2 + b2[n].euler() * j) * eps
        rb = b2[n] * (a[n] * a[n] - a[n - 1] * a[n - 1] + b2[n + 1] - b2[n - 1])
        for tag, l, r in (("edge a", ea, ra), ("edge b", eb, rb)):
            k = _first_bad(l - r)
            if k is not None:
                fails.append(f"{tag} n={n} at t^{k}")
    return CheckReport(f"Toda and edge Toda j={j} N={rat_str(c.N)}", not fails, fails,
                       {"interior": list(interior)})


def verify_t1_toda(nmax: int, K: int, N=None) -> CheckReport:
    """Gaussian data deformed by t1 (j = 1): N^-1 d a_n/dt1 = b_n^2 - b_{n+1}^2."""
    c = hankel_recurrence(1, nmax + 1, K, N)
    eps = 1 / c.N
    fails = []
    for n in range(1, nmax):
        k = _first_bad(c.a[n].deriv() * eps - (c.b2[n] - c.b2[n + 1]).truncate(K - 1))
        if k is not None:
            fails.append(f"n={n} at t^{k}")
    return CheckReport("t1 Toda flow", not fails, fails)


# ---------------------------------------------------------------------------
# genus expansion at x = 1
# ---------------------------------------------------------------------------

def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Least-squares-free exact solve of an overdetermined consistent system.

    Solves on the first len(cols) independent rows, then checks the rest.
    """
    ncols = len(rows[0])
    A = [r[:] + [v] for r, v in zip(rows, rhs)]
    piv_rows = []
    r = 0
    for col in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][col] != 0), None)
        if p is None:
            return None
        A[r], A[p] = A[p], A[r]
        pv = A[r][col]
        A[r] = [x / pv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        piv_rows.append(r)
        r += 1
    if any(A[i][-1] != 0 for i in range(r, len(A))):
        return None
    return [A[i][-1] for i in range(ncols)]


@dataclass
class GenusExtraction:
    j: int
    K: int
    ns: list
    b2_eps: dict       # k -> [coeff of eps^0, eps^1, ...] of [t^k] b_n^2 at N = n
    a_eps: dict        # k -> same for a_n
    consistent: bool
    failures: list

    def z(self, g: int) -> list[Fraction]:
        """[t^k] z_g for k = 0..K (coefficient of eps^(2g) in b_n^2)."""
        return [self.b2_eps[k][2 * g] if 2 * g < len(self.b2_eps[k]) else Fraction(0)
                for k in range(self.K + 1)]

    def u(self, g: int) -> list[Fraction]:
        return [self.a_eps[k][g] if g < len(self.a_eps[k]) else Fraction(0)
                for k in range(self.K + 1)]


def extract_genus_coeffs(j: int, K: int, ns=range(1, 9), degree: int | None = None) -> GenusExtraction:
    """Fit [t^k] b_n^2 and [t^k] a_n at N = n as polynomials in eps = 1/n."""
    ns = list(ns)
    D = degree if degree is not None else K + 1
    samples = {}
    for n in ns:
        c = hankel_recurrence(j, n, K, N=n)
        samples[n] = (c.a[n], c.b2[n])
    b2_eps, a_eps, fails = {}, {}, []
    for k in range(K + 1):
        rows = [[Fraction(1, n) ** p for p in range(D + 1)] for n in ns]
        for store, idx, tag in ((b2_eps, 1, "b2"), (a_eps, 0, "a")):
            rhs = [samples[n][idx].coeffs[k] for n in ns]
            sol = _solve_exact(rows, rhs)
            if sol is None:
                fails.append(f"{tag} [t^{k}] not a polynomial of degree {D} in 1/n")
                sol = [Fraction(0)] * (D + 1)
            store[k] = sol
    return GenusExtraction(j, K, ns, b2_eps, a_eps, not fails, fails)


def hankel_positivity(j: int, nmax: int, N=None) -> CheckReport:
    """det H_n > 0 at t = 0 for n <= nmax + 1 (Gaussian moments)."""
    N = Fraction(nmax if N is None else N)
    m = moments(j, 2 * nmax + 2, 0, N)
    D = leading_minors(_hankel(m, nmax + 1))
    bad = [k + 1 for k, d in enumerate(D) if not d.coeffs[0] > 0]
    return CheckReport(f"Hankel positivity at t=0 j={j} (n <= {nmax + 1})", not bad,
                       [f"det H_{k} <= 0" for k in bad])


def compare_with_series(ex: GenusExtraction, ctx) -> CheckReport:
    """Extracted z0, z1, u0, u1, u2 against the curve series (xi = t at x = 1).

    ``ctx`` is a :class:`~mapenum.genfun.SeriesContext` of the same valence;
    u_g are compared only for odd valence (a_n vanishes identically for even j).
    """
    from .genfun import f1_series, h1_series, h2_series

    K = min(ex.K, ctx.xi_order)
    targets = {"z0": ctx.z0_xi, "z1": f1_series(ctx)}
    if ex.j % 2:
        targets.update({"u0": ctx.u0_xi, "u1": h1_series(ctx), "u2": h2_series(ctx, "derived")})
    got = {"z0": ex.z(0), "z1": ex.z(1), "u0": ex.u(0), "u1": ex.u(1), "u2": ex.u(2)}
    fails = []
    for name, ser in targets.items():
        for k in range(K + 1):
            if got[name][k] != ser.coeffs[k]:
                fails.append(f"{name} at t^{k}: oracle {rat_str(got[name][k])} vs series {rat_str(ser.coeffs[k])}")
                break
    if not ex.consistent:
        fails.extend(ex.failures)
    return CheckReport(f"finite-n genus coefficients vs curve series j={ex.j} through t^{K}",
                       not fails, fails, {"compared": sorted(targets)})
