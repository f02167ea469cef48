"""Critical data at the right turning point and large-order asymptotics (odd j).

Every odd-valence quantity at x = 1 is a rational function of y = y0.  For
weight-0 G(y) self-similarity gives x dG/dx = Ydot(y) G'(y) with

    Ydot = (j - 2) xi2(y) / xi2'(y),

so f0x = z0 + Ydot z0' and

    f1 = (z0/24) (D^2 - D) log(B^2 / Pi),        D = Ydot d/dy,

are explicit rational functions of y.  Near the right turning point yc
(a simple zero of xi2'), with P = xi2, p2 = P''(yc) < 0, on the branch
xi = -sqrt(P) (so xi_c < 0, h0 > 0, s = +sqrt(y)):

    xi - xi_c ~ -p2 delta^2 / (4 sqrt(P_c)),   delta = y - yc < 0,
    tau = (xi - xi_c)^(1/2) = -k delta,        k = sqrt(-p2 / (4 sqrt(P_c))).

A rational F with a pole of order r at yc therefore behaves as
F ~ E delta^-r = E (-k)^r tau^-r; the coefficients gamma, zeta_g, c_g are read
off this way from exact Laurent coefficients evaluated at the isolated root.

Transfer: F ~ c tau^p with F even in xi has two dominant singularities
+-xi_c, whence

    [xi^(2m)] F ~ 2 c t_c^(p/2) (2m)^(-p/2-1) / Gamma(-p/2) * t_c^(-2m),   t_c = |xi_c|.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import mpmath

from .curve import CurveModel, branch_points, build_curve
from .exact import IsolatedRoot, Poly, RatFn, count_roots, poly_gcd, squarefree_part
from .genfun import Y, e1_closed, e2_closed_j3

S_VAR = "s"


# ---------------------------------------------------------------------------
# rational forms in y
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalForms:
    """Rational functions of y used near the turning point."""

    P: RatFn        # xi2(y)
    Ydot: RatFn     # x dy/dx at x = 1
    z0: RatFn
    f0x: RatFn
    f1: RatFn
    e1_full: RatFn  # d e1/dy, full mode


def local_forms(model: CurveModel) -> LocalForms:
    if not model.odd:
        raise ValueError("odd valence only")
    j = model.j
    P = model.xi2
    Pp = P.deriv()
    Ydot = P * (j - 2) / Pp
    z0 = model.z0
    z0p = z0.deriv()
    f0x = z0 + Ydot * z0p
    B = RatFn(model.B12)
    Pi = RatFn(model.Pi)
    Lp = B.deriv() / B * 2 - Pi.deriv() / Pi        # log(f0x^2 - f0 h0x^2) = log(B^2/Pi)
    DL = Ydot * Lp
    DDL = Ydot * DL.deriv()
    f1 = z0 * (DDL - DL) * Fraction(1, 24)
    return LocalForms(P, Ydot, z0, f0x, f1, e1_closed(j, "full").deriv())


def trinomial_poly(n: int, k: int) -> Poly:
    """[eta^k] (eta + s + 1/eta)^n as a polynomial in s."""
    c = [0] * (n + 1)
    for a in range(n + 1):          # a copies of eta, a - k copies of 1/eta
        b = a - k
        if b < 0 or a + b > n:
            continue
        p = n - a - b
        c[p] += factorial(n) // (factorial(a) * factorial(b) * factorial(p))
    return Poly(c, S_VAR)


# ---------------------------------------------------------------------------
# exact Laurent coefficients at an isolated root
# ---------------------------------------------------------------------------

def root_multiplicity(p: Poly, root: IsolatedRoot) -> int:
    """Exact multiplicity of the isolated real root of ``root.poly`` as a root of p."""
    base = squarefree_part(root.poly.with_var(p.var))
    r = root.refine(8)
    if r.is_exact():
        x = r.lo
        k = 0
        q = p
        while not q.is_zero() and q(x) == 0:
            q = q.deriv()
            k += 1
        return k
    k = 0
    q = p
    while q.degree > 0:
        g = poly_gcd(q, base)
        if g.degree <= 0 or count_roots(g, r.lo, r.hi) == 0:
            break
        q = q.exact_div(g)
        k += 1
    return k


def laurent_leading(F: RatFn, root: IsolatedRoot, bits: int) -> tuple[int, mpmath.mpf]:
    """(r, E) with F ~ E (y - yc)**(-r) as y -> yc (r may be <= 0)."""
    rn = root_multiplicity(F.num, root)
    rd = root_multiplicity(F.den, root)
    with mpmath.workprec(bits + 32):
        yc = root.value(bits + 32)
        num = F.num
        for _ in range(rn):
            num = num.deriv()
        den = F.den
        for _ in range(rd):
            den = den.deriv()
        E = (num.eval_mp(yc) / factorial(rn)) / (den.eval_mp(yc) / factorial(rd))
        return rd - rn, +E


# ---------------------------------------------------------------------------
# critical data
# ---------------------------------------------------------------------------

@dataclass
class CriticalData:
    j: int
    bits: int
    y0c: IsolatedRoot
    xi2c: mpmath.mpf
    xi_c: mpmath.mpf            # negative branch
    z0c: mpmath.mpf
    p2: mpmath.mpf              # xi2''(yc)
    k: mpmath.mpf               # tau = -k (y - yc)
    gamma: mpmath.mpf
    dPi: mpmath.mpf             # Pi'(yc) (simplicity of the turning point)
    Spp: mpmath.mpf
    Rpp: mpmath.mpf
    Rp: mpmath.mpf
    C1: mpmath.mpf
    C2: mpmath.mpf
    zeta1: mpmath.mpf
    forms: LocalForms = field(repr=False, default=None)

    @property
    def t_c(self):
        return -self.xi_c

    def tau_coefficient(self, F: RatFn) -> tuple[int, mpmath.mpf]:
        """(r, c) with F ~ c tau**(-r) for a pole of order r >= 1 at yc."""
        r, E = laurent_leading(F, self.y0c, self.bits)
        with mpmath.workprec(self.bits + 32):
            return r, +(E * (-self.k) ** r)

    def rows(self) -> list[tuple[str, str]]:
        d = mpmath.mp.dps
        out = []
        with mpmath.workprec(self.bits):
            for name in ("xi2c", "xi_c", "z0c", "p2", "k", "gamma", "dPi", "Spp", "Rpp", "Rp",
                         "C1", "C2", "zeta1"):
                out.append((name, mpmath.nstr(getattr(self, name), max(15, self.bits * 3 // 10))))
            out.insert(0, ("y0c", mpmath.nstr(self.y0c.value(self.bits), max(15, self.bits * 3 // 10))))
        mpmath.mp.dps = d
        return out


def critical_data(j: int, bits: int = 64) -> CriticalData:
    """Turning-point data at the right branch point for odd j."""
    if j % 2 == 0 or j < 3:
        raise ValueError("critical data is defined for odd j >= 3")
    model = build_curve(j)
    right, _ = branch_points(model, bits)
    root = right.y0
    forms = local_forms(model)
    with mpmath.workprec(bits + 32):
        yc = root.value(bits + 32)
        P = forms.P
        Pc = P.eval_mp(yc)
        if Pc <= 0:
            raise ArithmeticError("right turning point has nonpositive xi2")
        p2 = P.deriv().deriv().eval_mp(yc)
        if p2 >= 0:
            raise ArithmeticError("turning point is not a maximum of xi2 along the real branch")
        xi_c = -mpmath.sqrt(Pc)
        k = mpmath.sqrt(-p2 / (4 * mpmath.sqrt(Pc)))
        z0c = forms.z0.eval_mp(yc)
        dPi = model.Pi.deriv().eval_mp(yc)
        r, E = laurent_leading(forms.f0x, root, bits)
        if r != 1:
            raise ArithmeticError(f"f0x has pole order {r} at the turning point, expected 1")
        gamma = E * (-k)
        n = j - 1
        S = trinomial_poly(n, 0)
        Rt = trinomial_poly(n, 1)
        sc = mpmath.sqrt(yc)
        Spp = S.deriv().deriv().eval_mp(sc)
        Rp = Rt.deriv().eval_mp(sc)
        Rpp = Rt.deriv().deriv().eval_mp(sc)
        C1 = j * xi_c * z0c ** (mpmath.mpf(j) / 2 - 1) * gamma * (Spp / 3 + Rpp / 3 - Rp / 12)
        C2 = (mpmath.mpf(j) / 2 - 1) ** 2 * Pc / 4
        r1, E1 = laurent_leading(forms.f1, root, bits)
        if r1 != 4:
            raise ArithmeticError(f"f1 has pole order {r1} at the turning point, expected 4")
        zeta1 = E1 * k ** 4
        vals = [+v for v in (Pc, xi_c, z0c, p2, k, gamma, dPi, Spp, Rpp, Rp, C1, C2, zeta1)]
    return CriticalData(j, bits, root, *vals, forms=forms)


def gamma_direct(cd: CriticalData, deltas=(Fraction(1, 10 ** 8), Fraction(1, 2 * 10 ** 8))) -> list:
    """gamma from f0x * tau evaluated at y = yc - delta, Richardson-combined.

    Independent of the Laurent algebra: tau is computed as sqrt(xi(y) - xi_c)
    directly.  Returns [estimate at each delta..., extrapolated].
    """
    out = []
    with mpmath.workprec(2 * cd.bits + 64):
        yc = cd.y0c.value(2 * cd.bits + 64)
        xi_c = -mpmath.sqrt(cd.forms.P.eval_mp(yc))
        for d in deltas:
            y = yc - mpmath.mpf(d.numerator) / d.denominator
            xi = -mpmath.sqrt(cd.forms.P.eval_mp(y))
            tau = mpmath.sqrt(xi - xi_c)
            out.append(cd.forms.f0x.eval_mp(y) * tau)
        ratio = mpmath.mpf(deltas[0].numerator) / deltas[0].denominator * deltas[1].denominator / deltas[1].numerator
        out.append((ratio * out[1] - out[0]) / (ratio - 1))
        return [+v for v in out]


# ---------------------------------------------------------------------------
# recurrences
# ---------------------------------------------------------------------------

def zeta_recurrence(cd: CriticalData, gmax: int) -> list:
    """zeta_1..zeta_gmax from 0 = z_{g+1} + C1 C2 zc^(2g-1) (25 g^2 - 1) z_g + 6 C1 sum z_m z_{g+1-m}."""
    if gmax < 1:
        raise ValueError("gmax must be at least 1")
    with mpmath.workprec(cd.bits + 32):
        z = [None, +cd.zeta1]
        for g in range(1, gmax):
            conv = mpmath.fsum(z[m] * z[g + 1 - m] for m in range(1, g + 1))
            z.append(-(cd.C1 * cd.C2 * cd.z0c ** (2 * g - 1) * (25 * g * g - 1) * z[g] + 6 * cd.C1 * conv))
        out = [+v for v in z[1:]]
    bad = [g + 1 for g, v in enumerate(out) if not v > 0]
    if bad:
        raise ArithmeticError(f"nonpositive zeta_g at g = {bad}")
    return out


def c_recurrence(cd: CriticalData, c1, gmax: int) -> list:
    """c_1..c_gmax from the same recurrence shape seeded by c_1 (numeric grade)."""
    with mpmath.workprec(cd.bits + 32):
        c = [None, mpmath.mpf(c1)]
        for g in range(1, gmax):
            conv = mpmath.fsum(c[m] * c[g + 1 - m] for m in range(1, g + 1))
            c.append(-(cd.C1 * cd.C2 * cd.z0c ** (2 * g - 1) * (25 * g * g - 1) * c[g] + 6 * cd.C1 * conv))
        return [+v for v in c[1:]]


def e1_log_coefficient(cd: CriticalData):
    """c with e1 ~ c log tau at the turning point (full mode)."""
    r, E = laurent_leading(cd.forms.e1_full, cd.y0c, cd.bits)
    if r != 1:
        raise ArithmeticError("d e1/dy does not have a simple pole at the turning point")
    # e1' ~ E / delta  =>  e1 ~ E log|delta| = E log tau + const
    return E


# ---------------------------------------------------------------------------
# exact coefficients and asymptotic comparison
# ---------------------------------------------------------------------------

def lagrange_coefficients(model: CurveModel, F: RatFn, mmax: int) -> list[Fraction]:
    """[xi^(2m)] F(y0(xi^2)) for m = 1..mmax by Lagrange inversion on the curve."""
    j = model.j
    Fp = F.deriv()
    base = RatFn(model.B12 ** j * (j * j), model.Shat ** (j - 2))
    out = []
    phi = RatFn(Poly.const(1, Y))
    for m in range(1, mmax + 1):
        phi = phi * base
        out.append((Fp * phi).to_series(m - 1, Y).coeffs[m - 1] / m)
    return out


@dataclass
class RatioTable:
    j: int
    label: str
    power: int                  # F ~ c tau**power
    c: object
    rows: list                  # (m, exact, law, ratio, printed_ratio)
    printed_limit: object       # expected limit of exact / printed law

    def deviations(self) -> list:
        return [abs(r[3] - 1) for r in self.rows]

    def drifts(self) -> list:
        return [abs(b[3] - a[3]) for a, b in zip(self.rows, self.rows[1:])]

    def monotone(self) -> bool:
        d = self.deviations()
        return all(b < a for a, b in zip(d, d[1:]))

    def csv(self, bits: int) -> str:
        lines = ["m,exact,asymptotic,ratio,printed_law_ratio,precision\n"]
        for m, ex, law, ratio, pr in self.rows:
            lines.append(f"{m},{mpmath.nstr(ex, 15)},{mpmath.nstr(law, 15)},{mpmath.nstr(ratio, 15)},"
                         f"{mpmath.nstr(pr, 15)},float precision={bits}\n")
        return "".join(lines)


def transfer_law(c, power: int, t_c, m: int):
    """2 c t_c^(p/2) (2m)^(-p/2-1) / Gamma(-p/2) t_c^(-2m) for F ~ c tau^p."""
    a = mpmath.mpf(power) / 2
    return 2 * c * t_c ** a * mpmath.mpf(2 * m) ** (-a - 1) / mpmath.gamma(-a) * t_c ** (-2 * m)


def printed_law(kind: str, g: int, c, t_c, m: int):
    """The published large-order laws: two-legged (5g-1)/2 form, e_g (5g-5)/2 form."""
    if kind == "twolegged":
        return (c / mpmath.gamma(mpmath.mpf(5 * g - 1) / 2) * t_c ** (mpmath.mpf(1 - 5 * g) / 2 - 2 * m)
                * mpmath.mpf(2 * m) ** (mpmath.mpf(5 * g - 3) / 2))
    return (c / mpmath.gamma(mpmath.mpf(5 * g - 5) / 2) * t_c ** (mpmath.mpf(1 - 5 * g) / 2 - 2 * m)
            * mpmath.mpf(2 * m) ** (mpmath.mpf(5 * g - 7) / 2))


def asymptotic_vs_exact(j: int, g: int, kind: str, mrange, bits: int = 64,
                        cd: CriticalData | None = None) -> RatioTable:
    """Ratios exact / asymptotic for two-legged f_g (g in {0, 1}) or e_g (g = 2, j = 3)."""
    cd = cd or critical_data(j, bits)
    model = build_curve(j)
    if kind == "twolegged":
        if g == 0:
            F = cd.forms.z0
        elif g == 1:
            F = cd.forms.f1
        else:
            raise ValueError("two-legged asymptotics for g in {0, 1}")
    elif kind == "eg":
        if g == 2 and j == 3:
            cf = e2_closed_j3()
            F = cf.rational
        elif g == 0:
            F = None
        else:
            raise ValueError("e_g asymptotics for g = 2 at j = 3")
        if F is None:
            raise ValueError("e_g asymptotics for g = 2 at j = 3")
    else:
        raise ValueError(f"unknown kind {kind!r}")
    mrange = list(mrange)
    exact = lagrange_coefficients(model, F, max(mrange))
    with mpmath.workprec(bits + 32):
        if kind == "twolegged" and g == 0:
            # z0 analytic at yc: z0 ~ z0c + z0'(yc) delta = z0c - (z0'(yc)/k) tau
            power = 1
            c = -F.deriv().eval_mp(cd.y0c.value(bits + 32)) / cd.k
        else:
            r, c = cd.tau_coefficient(F)
            power = -r
        rows = []
        for m in mrange:
            ex = mpmath.mpf(exact[m - 1].numerator) / exact[m - 1].denominator
            law = transfer_law(c, power, cd.t_c, m)
            pl = printed_law(kind, g, c, cd.t_c, m)
            rows.append((m, +ex, +law, +(ex / law), +(ex / pl)))
        if kind == "twolegged":
            limit = mpmath.mpf(2)
        else:
            limit = 2 * cd.t_c ** 2
    return RatioTable(j, f"{kind} g={g}", power, +c, rows, +limit)
