"""Spectral curve and characteristic geometry for regular j-valent maps.

For odd valence j = 2nu + 1 the curve is the rational parametrisation

    xi**2 = (1/j**2) * y * Shat**(j-2) / B12**j,      z0 = B12 / Shat,

with y = h0**2/f0, B12 = S_{2nu}(sqrt y) and Shat = B12 - sqrt(y) B11.
Everything odd in sqrt(y) is carried as a polynomial in the signed
variable ``s`` (s**2 = y); on the physical branch s = h0/sqrt(f0) < 0.

The discriminant factors are

    2 B12 - j s B11 - (j-2) s B12 = Pi_minus(s) * (2 + s)
    2 B12 - j s B11 + (j-2) s B12 = Pi_plus(s)  * (2 - s)

and Pi = Pi_minus * Pi_plus, an even polynomial, read as a polynomial in y.

For even valence j = 2nu the odd field h0 vanishes identically and the
curve collapses to  z0 + xi c_j z0**nu = 1  with c_j = j C(j-1, nu-1).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import mpmath
import numpy as np

from .appell import B11, B12, CheckReport, R, S, sB11
from .exact import IsolatedRoot, Poly, RatFn, rat_str, sturm_isolate
from .stringpoly import HRPoly, falling, phi_psi_extraction

Y = "y"
SVAR = "s"
ZVAR = "z"


@dataclass(frozen=True)
class CurveModel:
    j: int
    odd: bool
    xi2: RatFn | None = None          # in y
    z0: RatFn | None = None           # in y
    Shat: Poly | None = None          # in y
    B12: Poly | None = None           # in y
    sB11: Poly | None = None          # in y
    dhat_minus: RatFn | None = None   # in s
    dhat_plus: RatFn | None = None    # in s
    Pi_minus: Poly | None = None      # in s
    Pi_plus: Poly | None = None       # in s
    Pi: Poly | None = None            # in y
    q: Poly | None = None             # rational quadratic factor of Pi, when one exists
    turning_roots: tuple = ()         # real roots of Pi (IsolatedRoot, in y)
    c_j: Fraction | None = None       # even valence
    xi_of_z0: RatFn | None = None     # even valence, in z

    @property
    def nu(self) -> int:
        return self.j // 2


def _rational_quadratic_factor(p: Poly) -> Poly | None:
    """A monic rational quadratic factor of p with two real roots, if p has one.

    Candidates come from pairs of real roots: the product is rational iff it
    divides p exactly, which we test with rational reconstruction of the
    sum and product of the pair.
    """
    if p.degree == 2:
        return p.monic()
    roots = sturm_isolate(p)
    if len(roots) != 2:
        return None
    with mpmath.workprec(256):
        a, b = (r.value(256) for r in roots)
        ssum, prod = a + b, a * b
    for x in (ssum, prod):
        fr = Fraction(mpmath.nstr(x, 60)).limit_denominator(10 ** 12)
        if abs(mpmath.mpf(fr.numerator) / fr.denominator - x) > mpmath.mpf(10) ** -40:
            return None
    cand = Poly([Fraction(mpmath.nstr(prod, 60)).limit_denominator(10 ** 12),
                 -Fraction(mpmath.nstr(ssum, 60)).limit_denominator(10 ** 12), 1], p.var)
    _, r = p.divmod(cand)
    return cand if r.is_zero() else None


def build_curve(j: int) -> CurveModel:
    if j < 3:
        raise ValueError("valence must be at least 3")
    if j % 2 == 0:
        nu = j // 2
        c = Fraction(j * comb(j - 1, nu - 1))
        z = Poly.gen(ZVAR)
        xi = RatFn(Poly([1, -1], ZVAR), (z ** nu).scale(c))
        return CurveModel(j=j, odd=False, c_j=c, xi_of_z0=xi)

    nu = (j - 1) // 2
    b, sb = B12(nu), sB11(nu)
    sh = b - sb
    y = Poly.gen(Y)
    xi2 = RatFn(y * sh ** (j - 2), (b ** j).scale(j * j))
    z0 = RatFn(b, sh)

    bs = b.subs_square(SVAR)
    b11s = B11(nu).with_var(SVAR)
    sv = Poly.gen(SVAR)
    core = bs * 2 - sv * b11s * j
    pim, rm = (core - sv * bs * (j - 2)).divmod(Poly([2, 1], SVAR))
    pip, rp = (core + sv * bs * (j - 2)).divmod(Poly([2, -1], SVAR))
    if not (rm.is_zero() and rp.is_zero()):
        raise ArithmeticError(f"Pi factors are not exact at j={j}")
    pi_s = pim * pip
    pi = pi_s.even_to_square(Y)
    dm = RatFn(pim * Poly([2, 1], SVAR), bs)
    dp = RatFn(pip * Poly([2, -1], SVAR), bs)
    roots = tuple(sturm_isolate(pi))
    return CurveModel(
        j=j, odd=True, xi2=xi2, z0=z0, Shat=sh, B12=b, sB11=sb,
        dhat_minus=dm, dhat_plus=dp, Pi_minus=pim, Pi_plus=pip, Pi=pi,
        q=_rational_quadratic_factor(pi), turning_roots=roots,
    )


def pi_factor_check(model: CurveModel) -> CheckReport:
    """Exact divisibility of the discriminant cores by (2 -+ s), symmetry and evenness."""
    if not model.odd:
        raise ValueError("odd valence only")
    j, nu = model.j, model.nu
    bs = model.B12.subs_square(SVAR)
    sv = Poly.gen(SVAR)
    core = bs * 2 - sv * B11(nu).with_var(SVAR) * j
    fails = []
    for tag, sign, lin, fac in (("-", -1, Poly([2, 1], SVAR), model.Pi_minus),
                                ("+", 1, Poly([2, -1], SVAR), model.Pi_plus)):
        q, r = (core + sv * bs * (j - 2) * sign).divmod(lin)
        if not r.is_zero():
            fails.append(f"core {tag} not divisible")
        elif q != fac:
            fails.append(f"Pi_{tag} quotient mismatch")
    if model.Pi_minus.scale_var(-1) != model.Pi_plus:
        fails.append("Pi_-(-s) != Pi_+(s)")
    prod_s = model.Pi_minus * model.Pi_plus
    if not prod_s.is_even() or prod_s.even_to_square(Y) != model.Pi:
        fails.append("Pi_- Pi_+ is not the even polynomial Pi(y)")
    return CheckReport(f"Pi factors j={j}", not fails, fails)


def _in_y(r: RatFn) -> RatFn:
    """An even rational function of s rewritten in y = s**2."""
    return RatFn(r.num.even_to_square(Y), r.den.even_to_square(Y))


def _s_to_y_even(p: Poly) -> Poly:
    return p.even_to_square(Y)


def _hodograph_jacobian_s(j: int) -> tuple[RatFn, RatFn]:
    """A11 and sqrt(f0)*A12 at w = 1 as rational functions of s = h0/sqrt(f0).

    The hodograph equations h + xi phi_0 = 0, f + xi psi_0 = w have Jacobian
    [[A11, A12], [f A12, A11]] with A11 = 1 + xi phi_1 and A12 = xi psi_1 / f
    (unwinding identity).  Homogeneity lets xi r**(j-2) be eliminated via
    the first equation: xi r**(j-2) = -s / P0(s), with phi_0 = r**(j-1) P0(s).
    """
    s = Poly.gen(SVAR)
    p0 = S(j - 1).with_var(SVAR) * j
    p1 = S(j - 2).with_var(SVAR) * falling(j, 2)
    q1 = R(j - 2).deriv().with_var(SVAR) * falling(j, 2)
    xr = RatFn(-s, p0)
    a11 = 1 + xr * p1
    ra12 = xr * q1
    return a11, ra12


def derivative_identities(model: CurveModel) -> CheckReport:
    """Exact rational-function identities along the odd-valence curve."""
    if not model.odd:
        raise ValueError("derivative identities are stated for odd valence")
    j, nu = model.j, model.nu
    y = Poly.gen(Y)
    fails = []
    details = {}
    b, pi = model.B12, model.Pi
    dhat = _in_y(model.dhat_plus * model.dhat_minus)
    # dxi2/dy = -z0 xi2 Dhat / (y (y - 4))
    lhs = model.xi2.deriv()
    rhs = -model.z0 * model.xi2 * dhat / RatFn(y * (y - 4))
    if lhs != rhs:
        fails.append("dxi2/dy != -z0 xi2 Dhat/(y(y-4))")
    # dxi2/dy = [Shat^(nu-1) / (j B12^(nu+1))]^2 Pi
    alt = RatFn(model.Shat ** (nu - 1), (b ** (nu + 1)).scale(j)) ** 2 * pi
    if lhs != alt:
        fails.append("dxi2/dy != (Shat^(nu-1)/(j B12^(nu+1)))^2 Pi")
    # value at the origin: ((2nu+1) C(2nu, nu))^-2
    d0 = lhs(Fraction(0))
    details["dxi2_dy_at_0"] = d0
    if d0 != Fraction(1, (j * comb(2 * nu, nu)) ** 2):
        fails.append("dxi2/dy at y=0")
    # 1 - 1/z0 = sqrt(y) B11 / B12
    if 1 - 1 / model.z0 != RatFn(model.sB11, b):
        fails.append("1 - 1/z0 != sqrt(y) B11/B12")
    # symmetry Pi_-(-s) = Pi_+(s), degree of Pi
    if model.Pi_minus.scale_var(-1) != model.Pi_plus:
        fails.append("Pi_-(-s) != Pi_+(s)")
    if pi.degree != j - 1:
        fails.append(f"deg Pi = {pi.degree}, expected {j - 1}")
    if (model.dhat_plus - model.dhat_minus) != RatFn(Poly([0, 2 * (j - 2)], SVAR)):
        fails.append("dhat_+ - dhat_- != 2(j-2) s")
    # fundamental discriminant: f0w^2 - f0 h0w^2 from implicit differentiation
    a11, ra12 = _hodograph_jacobian_s(j)
    det = a11 * a11 - ra12 * ra12
    fund = _in_y(1 / det)
    if fund != RatFn(b * b, pi):
        fails.append("f0w^2 - f0 h0w^2 != B12^2/Pi")
    if fund != RatFn(Poly([4, -1], Y)) / dhat:
        fails.append("f0w^2 - f0 h0w^2 != (4-y)/Dhat")
    # h0w, f0w individually against the Pi_-/Pi_+ partial fractions
    bs = b.subs_square(SVAR)
    f0w = a11 / det
    rh0w = -ra12 / det
    inv_m, inv_p = RatFn(Poly([1], SVAR), model.Pi_minus), RatFn(Poly([1], SVAR), model.Pi_plus)
    if f0w != RatFn(bs) * (inv_m + inv_p) / 2:
        fails.append("f0w != (B12/2)(1/Pi_- + 1/Pi_+)")
    if rh0w != RatFn(bs) * (inv_m - inv_p) / 2:
        fails.append("sqrt(f0) h0w != (B12/2)(1/Pi_- - 1/Pi_+)")
    # Riemann invariants: d_w r_pm = r_pm / d_mp, in units of sqrt(f0)
    s = RatFn(Poly.gen(SVAR))
    z0s = RatFn(model.z0.num.subs_square(SVAR), model.z0.den.subs_square(SVAR))
    for sign, dmp in ((1, model.dhat_minus), (-1, model.dhat_plus)):
        # sqrt(f0) d_w r = sqrt(f0) h0w + sign f0w ; r/d = sqrt(f0)(s + 2 sign)/(z0 dhat)
        lhs_r = rh0w + f0w * sign
        rhs_r = (s + 2 * sign) / dmp
        if lhs_r != rhs_r:
            fails.append(f"d_w r_{'+' if sign > 0 else '-'} != r/d")
    # d_pm = z0 dhat_pm against j w + (+-)(j-2) f0 (s -+ 1) at w = 1
    for sign, dh in ((1, model.dhat_plus), (-1, model.dhat_minus)):
        direct = j + z0s * (j - 2) * (s * sign - 1)
        if direct != z0s * dh:
            fails.append("d_pm != z0 dhat_pm")
    # A11^2 - f0 A12^2 = 1/(f0w^2 - f0 h0w^2)
    if _in_y(det) != RatFn(pi, b * b):
        fails.append("A11^2 - f0 A12^2 != Pi/B12^2")
    # Dhat/(4 - y) has numerator of degree nu after reduction against B12^2
    red = _in_y(model.dhat_plus * model.dhat_minus) / RatFn(Poly([4, -1], Y))
    details["Dhat_over_4my"] = red
    if red != RatFn(pi, b * b):
        fails.append("Dhat/(4-y) != Pi/B12^2")
    return CheckReport(f"curve derivative identities j={j}", not fails, fails, details)


def pole_zero_structure(model: CurveModel) -> CheckReport:
    """Pole/zero structure of xi2: nu negative poles, nu real zeros of Shat, turning points."""
    if not model.odd:
        raise ValueError("odd valence only")
    nu = model.nu
    fails = []
    poles = sturm_isolate(model.B12)
    if len(poles) != nu or any(r.value(53) >= 0 for r in poles):
        fails.append(f"B12 has {len(poles)} real roots, expected {nu} negative")
    sh_roots = sturm_isolate(model.Shat)
    if len(sh_roots) != nu:
        fails.append(f"Shat has {len(sh_roots)} real roots, expected {nu}")
    if len(model.turning_roots) != 2:
        fails.append(f"Pi has {len(model.turning_roots)} real roots, expected 2")
    return CheckReport(f"curve pole/zero structure j={model.j}", not fails, fails,
                       {"poles": poles, "shat_roots": sh_roots})


@dataclass(frozen=True)
class TurningPoint:
    y0: IsolatedRoot
    xi2: mpmath.mpf
    dq: mpmath.mpf


def branch_points(model: CurveModel, bits: int = 64) -> tuple[TurningPoint, TurningPoint]:
    """(right, left) turning points: the real roots of Pi, right having xi2 > 0."""
    if not model.odd:
        raise ValueError("odd valence only")
    roots = model.turning_roots
    if len(roots) != 2:
        raise ArithmeticError(f"expected exactly two real turning points, found {len(roots)}")
    dpi = model.Pi.deriv()
    pts = []
    with mpmath.workprec(bits + 32):
        for r in roots:
            v = r.value(bits + 32)
            x2 = model.xi2.eval_mp(v)
            d = dpi.eval_mp(v)
            if d == 0:
                raise ArithmeticError("turning point is not simple")
            pts.append(TurningPoint(r, +x2, +d))
    pos = [p for p in pts if p.xi2 > 0]
    neg = [p for p in pts if p.xi2 < 0]
    if len(pos) != 1 or len(neg) != 1:
        raise ArithmeticError("turning points do not straddle xi2 = 0")
    return pos[0], neg[0]


@dataclass(frozen=True)
class RiemannData:
    r_plus: object
    r_minus: object
    lam_plus: object
    lam_minus: object
    d_plus: object
    d_minus: object


def _mpq(x):
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def riemann_data(model: CurveModel, s) -> RiemannData:
    """Riemann invariants, eigenvalues and characteristic denominators at w = 1.

    ``s`` is the signed square root of y (s = h0/sqrt(f0)); rational input
    gives values in Q(sqrt(f0)) reported as multiples of sqrt(f0) where
    needed, so we return mpmath numbers throughout.
    """
    if not model.odd:
        raise ValueError("odd valence only")
    nu, j = model.nu, model.j
    y = s * s
    zden = model.z0.den(y) if not isinstance(s, mpmath.mpf) else model.z0.den.eval_mp(y)
    if zden == 0:
        raise ZeroDivisionError("z0 has a pole at this point")
    ev = (lambda p, x: p.eval_mp(x)) if isinstance(s, mpmath.mpf) else (lambda p, x: _mpq(p(x)))
    z0 = ev(model.z0.num, y) / ev(model.z0.den, y)
    rf = mpmath.sqrt(z0)
    ss = _mpq(s) if not isinstance(s, mpmath.mpf) else s
    b12 = ev(model.B12, y)
    b11 = B11(nu).eval_mp(ss)
    lam_p = z0 ** nu * rf * (b11 + b12)
    lam_m = z0 ** nu * rf * (b11 - b12)
    d_p = j + (j - 2) * z0 * (ss - 1)
    d_m = j - (j - 2) * z0 * (ss + 1)
    return RiemannData(rf * (ss + 2), rf * (ss - 2), lam_p, lam_m, d_p, d_m)


# ---------------------------------------------------------------------------
# conservation law residual (floating point)
# ---------------------------------------------------------------------------

def _hf_arrays(p: HRPoly):
    t = p.hf_terms()
    return [(a, c, float(v)) for (a, c), v in t.items()]


def _eval_hf(terms, h, f):
    out = np.zeros_like(h)
    for a, c, v in terms:
        out = out + v * h ** a * f ** c
    return out


@dataclass(frozen=True)
class ResidualResult:
    step: float
    residual: float
    flagged: int


@dataclass
class ConservationStudy:
    tvec: tuple
    results: list
    order: float

    def line(self) -> str:
        parts = ", ".join(f"h={r.step:.3g}: {r.residual:.3e}" for r in self.results)
        return f"conservation residual {parts}; observed order {self.order:.3f}"


class _HodographSystem:
    """Mixed-valence hodograph equations h + xi Phi0(h, f) = 0, f + xi Psi0(h, f) = x."""

    def __init__(self, tvec: Sequence):
        self.tvec = tuple(Fraction(t) if not isinstance(t, float) else t for t in tvec)
        self.phi0, self.psi0, self.F1, self.F2 = [], [], [], []
        self.dphi_h, self.dphi_f, self.dpsi_h, self.dpsi_f = [], [], [], []
        for j, t in enumerate(tvec, start=1):
            if t == 0:
                continue
            t = float(t)
            p0, s0 = phi_psi_extraction(j, 0)
            pm, sm = phi_psi_extraction(j, -1)
            for dst, poly in ((self.phi0, p0), (self.psi0, s0), (self.F1, sm), (self.F2, pm),
                              (self.dphi_h, p0.d_h()), (self.dphi_f, p0.d_f()),
                              (self.dpsi_h, s0.d_h()), (self.dpsi_f, s0.d_f())):
                dst.extend((a, c, t * v) for a, c, v in _hf_arrays(poly))

    def solve(self, xi, x, tol=1e-14, maxit=60):
        h = np.zeros_like(xi)
        f = x.copy()
        ok = np.zeros(xi.shape, dtype=bool)
        for _ in range(maxit):
            g1 = h + xi * _eval_hf(self.phi0, h, f)
            g2 = f + xi * _eval_hf(self.psi0, h, f) - x
            a = 1 + xi * _eval_hf(self.dphi_h, h, f)
            b = xi * _eval_hf(self.dphi_f, h, f)
            c = xi * _eval_hf(self.dpsi_h, h, f)
            d = 1 + xi * _eval_hf(self.dpsi_f, h, f)
            det = a * d - b * c
            dh = (d * g1 - b * g2) / det
            df = (a * g2 - c * g1) / det
            # damping: keep f positive
            lam = np.ones_like(h)
            bad = f - df <= 0
            lam[bad] = 0.5 * f[bad] / np.abs(df[bad])
            h = h - lam * dh
            f = f - lam * df
            ok = (np.abs(dh) < tol * (1 + np.abs(h))) & (np.abs(df) < tol * (1 + np.abs(f)))
            if ok.all():
                break
        return h, f, ok

    def residual(self, xi, x, step):
        """Max-norm of d_xi(h, log f) + d_x(F1, F2) by centred differences."""
        hp, fp, o1 = self.solve(xi + step, x)
        hm, fm, o2 = self.solve(xi - step, x)
        hr, fr, o3 = self.solve(xi, x + step)
        hl, fl, o4 = self.solve(xi, x - step)
        ok = o1 & o2 & o3 & o4
        r1 = (hp - hm) / (2 * step) + (_eval_hf(self.F1, hr, fr) - _eval_hf(self.F1, hl, fl)) / (2 * step)
        r2 = (np.log(fp) - np.log(fm)) / (2 * step) + (_eval_hf(self.F2, hr, fr) - _eval_hf(self.F2, hl, fl)) / (2 * step)
        r = np.maximum(np.abs(r1), np.abs(r2))
        r = np.where(ok, r, 0.0)
        return float(r.max()) if r.size else 0.0, int((~ok).sum())


def conservation_residual(tvec: Sequence, xi_range=(0.005, 0.02), x_range=(0.9, 1.1),
                          npts: int = 9, steps=(4e-3, 2e-3, 1e-3)) -> ConservationStudy:
    """Residual of the leading-order conservation law on a (xi, x) grid.

    The hodograph equations are solved pointwise by damped Newton iteration
    from the Gaussian data (h, f) = (0, x); the residual is evaluated with
    centred differences of step h for each h in ``steps``, and the observed
    convergence order is the mean log2 ratio of successive residuals.
    """
    if not tvec:
        raise ValueError("empty coupling vector")
    system = _HodographSystem(tvec)
    xi, x = np.meshgrid(np.linspace(*xi_range, npts), np.linspace(*x_range, npts))
    xi, x = xi.ravel(), x.ravel()
    results = []
    for h in steps:
        r, flagged = system.residual(xi, x, h)
        results.append(ResidualResult(h, r, flagged))
    orders = []
    for a, b in zip(results, results[1:]):
        if a.residual > 0 and b.residual > 0:
            orders.append(float(np.log(a.residual / b.residual) / np.log(a.step / b.step)))
    order = float(np.mean(orders)) if orders else float("inf")
    return ConservationStudy(tuple(tvec), results, order)


# ---------------------------------------------------------------------------
# sampling and export
# ---------------------------------------------------------------------------

def rat_decimal(x: Fraction, digits: int) -> str:
    """Round a rational half-to-even to ``digits`` places, rendered exactly."""
    x = Fraction(x)
    scaled = x * 10 ** digits
    q, r = divmod(scaled.numerator, scaled.denominator)
    twice = 2 * r
    if twice > scaled.denominator or (twice == scaled.denominator and q % 2):
        q += 1
    sign = "-" if q < 0 else ""
    q = abs(q)
    if digits == 0:
        return f"{sign}{q}"
    whole, frac = divmod(q, 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def sample_curve(model: CurveModel, y_lo, y_hi, n: int) -> list[tuple[Fraction, Fraction]]:
    """Exact (y, xi2) pairs at n equally spaced rational y, skipping poles."""
    if not model.odd:
        raise ValueError("curve sampling is defined for odd valence")
    y_lo, y_hi = Fraction(y_lo), Fraction(y_hi)
    if n <= 0 or y_hi <= y_lo:
        return []
    pts = []
    for k in range(n):
        yv = y_lo + (y_hi - y_lo) * Fraction(k, max(n - 1, 1))
        if model.xi2.den(yv) == 0:
            continue
        pts.append((yv, model.xi2(yv)))
    return pts


def curve_csv(samples, digits: int = 12) -> str:
    lines = ["y0,xi2,y0_exact,xi2_exact"]
    for yv, x2 in samples:
        lines.append(f"{rat_decimal(yv, digits)},{rat_decimal(x2, digits)},{rat_str(yv)},{rat_str(x2)}")
    return "\n".join(lines) + "\n"


def curve_svg(samples, marks=(), width: int = 640, height: int = 400, digits: int = 3) -> str:
    """SVG polyline of (xi2, y0) with optional marked points [(xi2, y0, label)]."""
    pad = 40
    xs = [float(x2) for _, x2 in samples] + [float(m[0]) for m in marks]
    ys = [float(yv) for yv, _ in samples] + [float(m[1]) for m in marks]
    if xs:
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
    else:
        x0, x1, y0, y1 = -1.0, 1.0, 0.0, 1.0
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1

    def px(v):
        return pad + (v - x0) / (x1 - x0) * (width - 2 * pad)

    def py(v):
        return height - pad - (v - y0) / (y1 - y0) * (height - 2 * pad)

    fmt = f"{{:.{digits}f}}"
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">']
    out.append(f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>')
    out.append(f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>')
    if 0 >= x0 and 0 <= x1:
        zx = fmt.format(px(0.0))
        out.append(f'<line x1="{zx}" y1="{pad}" x2="{zx}" y2="{height - pad}" stroke="gray" stroke-dasharray="4"/>')
    out.append(f'<text x="{width - pad}" y="{height - pad / 4}" text-anchor="end">xi^2</text>')
    out.append(f'<text x="{pad / 4}" y="{pad}">y0</text>')
    if samples:
        pts = " ".join(f"{fmt.format(px(float(x2)))},{fmt.format(py(float(yv)))}" for yv, x2 in samples)
        out.append(f'<polyline fill="none" stroke="steelblue" points="{pts}"/>')
    for mx, my, label in marks:
        cx, cy = fmt.format(px(float(mx))), fmt.format(py(float(my)))
        out.append(f'<circle cx="{cx}" cy="{cy}" r="4" fill="crimson"/>')
        out.append(f'<text x="{cx}" y="{cy}" dx="6" dy="-6">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
