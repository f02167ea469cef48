"""Generating functions of regular maps as exact series in the coupling xi.

At x = 1 every genus-g generating function is a function of xi alone, and
its x-dependence is fixed by self-similarity: a quantity F of weight k
satisfies

    x dF/dx = k F + ((j-2)/2) xi dF/dxi        (at x = 1).

Weights: f0 ~ 1, h0 ~ 1/2, f_g ~ 1 - 2g, h_g ~ 1/2 - g, E_g ~ 2 - 2g.  The
class :class:`WSeries` carries the weight along so x-derivatives of
composite expressions follow mechanically.

Odd valence objects even in xi (y0, z0, e_g, f_g) are stored in the
variable ``xi2`` = xi**2; the odd ones (u0, h1, h2) in ``xi``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .appell import CheckReport
from .curve import CurveModel, build_curve
from .exact import Poly, RatFn, Series, rat_str
from .stringpoly import phi_psi_extraction

XI = "xi"
XI2 = "xi2"
Y = "y"
ZVAR = "z"


# ---------------------------------------------------------------------------
# weighted series and x-derivatives
# ---------------------------------------------------------------------------

def x_deriv(F: Series, weight, j: int) -> Series:
    """x dF/dx at x = 1 for a weight-``weight`` quantity F(xi) (or F(xi**2))."""
    w = Fraction(weight)
    scale = Fraction(j - 2, 2) * (2 if F.var == XI2 else 1)
    return F * w + F.euler() * scale


@dataclass(frozen=True)
class WSeries:
    """A series in xi together with its self-similarity weight."""

    s: Series
    w: Fraction
    j: int

    def _w(self, other):
        if isinstance(other, WSeries):
            return other
        return WSeries(Series.const(other, self.s.order, self.s.var), Fraction(0), self.j)

    def __add__(self, other):
        o = self._w(other)
        if o.w != self.w and not o.s.is_zero() and not self.s.is_zero():
            raise ValueError(f"adding weights {self.w} and {o.w}")
        return WSeries(self.s + o.s, self.w if not self.s.is_zero() else o.w, self.j)

    __radd__ = __add__

    def __neg__(self):
        return WSeries(-self.s, self.w, self.j)

    def __sub__(self, other):
        return self + (-self._w(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return WSeries(self.s * other, self.w, self.j)
        return WSeries(self.s * other.s, self.w + other.w, self.j)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return WSeries(self.s / other, self.w, self.j)
        return WSeries(self.s / other.s, self.w - other.w, self.j)

    def __pow__(self, n: int):
        return WSeries(self.s ** n, self.w * n, self.j)

    def dx(self) -> "WSeries":
        """d/dx at x = 1; the result has weight one less."""
        return WSeries(x_deriv(self.s, self.w, self.j), self.w - 1, self.j)

    def log(self) -> "WSeries":
        """log of a weight-0 quantity with constant term c > 0 (constant dropped)."""
        if self.w != 0:
            raise ValueError("log is only taken of weight-0 quantities")
        c0 = self.s.coeffs[0]
        return WSeries((self.s / c0).log(), Fraction(0), self.j)


def odd_to_xi(F: Series) -> Series:
    """A series in xi2 rewritten in xi."""
    return F.subs_monomial(1, 2, order=2 * F.order, var=XI)


def xi_to_even(F: Series) -> Series:
    return F.even_part_in_square(XI2)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosedForm:
    """rational + sum c_k log(L_k), all rational functions of one variable."""

    label: str
    rational: RatFn
    logs: tuple = ()

    def series(self, inner: Series) -> Series:
        out = self.rational.compose_series(inner)
        out = out - out.coeffs[0]
        for c, L in self.logs:
            v = L.compose_series(inner)
            if v.coeffs[0] != 1:
                raise ArithmeticError(f"{self.label}: log argument is {rat_str(v.coeffs[0])} at the origin")
            out = out + v.log() * c
        return out

    def deriv(self) -> RatFn:
        out = self.rational.deriv()
        for c, L in self.logs:
            out = out + L.deriv() / L * c
        return out


def e0_closed(j: int) -> ClosedForm:
    """Genus-zero free energy on the curve.

    Odd j, in y:  1/2 log z0 + (j-2)/(4j(j+2)) [(j-2) z0^2 (1+2y) - 2(j+1) z0 (2+y) + 3(j+2)]
    Even j = 2nu, in z0:  1/2 log z0 + (nu-1)^2/(4nu(nu+1)) (z0-1)(z0 - 3(nu+1)/(nu-1))
    """
    if j < 3:
        raise ValueError("valence must be at least 3")
    if j % 2:
        m = build_curve(j)
        z = m.z0
        y = RatFn(Poly.gen(Y))
        k = Fraction(j - 2, 4 * j * (j + 2))
        rat = (z * z * (1 + 2 * y) * (j - 2) - z * (2 + y) * (2 * (j + 1)) + 3 * (j + 2)) * k
        return ClosedForm("E0", rat, ((Fraction(1, 2), z),))
    nu = j // 2
    z = RatFn(Poly.gen(ZVAR))
    k = Fraction((nu - 1) ** 2, 4 * nu * (nu + 1))
    rat = (z - 1) * (z - Fraction(3 * (nu + 1), nu - 1)) * k
    return ClosedForm("e0_even", rat, ((Fraction(1, 2), z),))


def e1_closed(j: int, mode: str = "full") -> ClosedForm:
    """Genus-one free energy.

    full:  1/24 log(B12^2/Pi) - 1/12 log z0          (odd j, in y)
    table: 1/24 log(B12^2/Pi)  (the antiderivative of the residue integrand)
    even j: -1/12 log(nu - (nu-1) z0)                  (in z0)
    """
    if j % 2 == 0:
        nu = j // 2
        arg = RatFn(Poly([nu, -(nu - 1)], ZVAR))
        return ClosedForm("e1_even", RatFn(Poly([], ZVAR)), ((Fraction(-1, 12), arg),))
    m = build_curve(j)
    disc = RatFn(m.B12 * m.B12, m.Pi)
    zero = RatFn(Poly([], Y))
    if mode == "full":
        return ClosedForm("E1", zero, ((Fraction(1, 24), disc), (Fraction(-1, 12), m.z0)))
    if mode == "table":
        return ClosedForm("E1_table", zero, ((Fraction(1, 24), disc),))
    raise ValueError(f"unknown genus-one mode {mode!r}")


def e2_closed_j3() -> ClosedForm:
    y = Poly.gen(Y)
    num = Poly([2800, -4240, 2712, -1060, 175], Y) * y ** 3
    pi = Poly([4, -8, 1], Y)
    return ClosedForm("e2_j3", RatFn(num.scale(Fraction(1, 30)), pi ** 5))


def even_Cg_constants(gmax: int) -> list[Fraction]:
    """C^(g), g = 2..gmax, from the constant-term recursion of even valence."""
    if gmax < 2:
        raise ValueError("gmax must be at least 2")

    def falling_r(r: int, m: int) -> int:
        out = 1
        for i in range(m):
            out *= r - i
        return out

    C: dict[int, Fraction] = {}
    for g in range(2, gmax + 1):
        acc = Fraction(1, factorial(2 * g + 2)) - Fraction(1, factorial(2 * g) * 12)
        if g != 2:
            tail = sum((Fraction(falling_r(2 - 2 * k, 2 * g - 2 * k + 2), factorial(2 * g - 2 * k + 2)) * C[k]
                        for k in range(2, g)), Fraction(0))
            acc += tail / factorial(2 * g - 1)
        C[g] = -2 * factorial(2 * g - 3) * acc
    return [C[g] for g in range(2, gmax + 1)]


# ---------------------------------------------------------------------------
# the series context
# ---------------------------------------------------------------------------

@dataclass
class SeriesContext:
    j: int
    M: int
    curve: CurveModel
    y0_of_xi2: Series | None = None
    z0_of_xi2: Series | None = None
    u0_of_xi: Series | None = None
    z0_of_xi: Series | None = None
    cache: dict = field(default_factory=dict, repr=False)

    # xi-series views ---------------------------------------------------
    @property
    def z0_xi(self) -> Series:
        if self.j % 2:
            return odd_to_xi(self.z0_of_xi2).truncate(self.xi_order)
        return self.z0_of_xi

    @property
    def u0_xi(self) -> Series:
        if self.j % 2:
            return self.u0_of_xi
        return Series([], self.xi_order, XI)

    @property
    def xi_order(self) -> int:
        return 2 * self.M - 1 if self.j % 2 else 2 * self.M

    @property
    def f0(self) -> WSeries:
        return WSeries(self.z0_xi, Fraction(1), self.j)

    @property
    def h0(self) -> WSeries:
        return WSeries(self.u0_xi, Fraction(1, 2), self.j)

    def even_in_xi2(self, F: Series) -> Series:
        """Rewrite an even xi-series (odd valence) in xi2."""
        return xi_to_even(F)

    def e0(self) -> Series:
        return self._memo("e0", lambda: self._closed_series(e0_closed(self.j)))

    def e1(self, mode: str = "full") -> Series:
        return self._memo(f"e1_{mode}", lambda: self._closed_series(e1_closed(self.j, mode)))

    def e2(self) -> Series:
        if self.j != 3:
            raise ValueError("the genus-two closed form is available for j = 3 only")
        return self._memo("e2", lambda: self._closed_series(e2_closed_j3()))

    def _closed_series(self, cf: ClosedForm) -> Series:
        if self.j % 2:
            return cf.series(self.y0_of_xi2)
        # even valence forms are in z0; expand around z0 = 1
        u = self.z0_of_xi - 1
        shifted = ClosedForm(cf.label, cf.rational.compose(RatFn(Poly([1, 1], ZVAR))),
                             tuple((c, L.compose(RatFn(Poly([1, 1], ZVAR)))) for c, L in cf.logs))
        return shifted.series(u)

    def _memo(self, key, fn):
        if key not in self.cache:
            self.cache[key] = fn()
        return self.cache[key]


def build_series_context(j: int, M: int) -> SeriesContext:
    """Series of y0, z0 (in xi2) and u0 (in xi) through xi2**M, or z0 through xi**(2M) for even j."""
    if j < 3:
        raise ValueError("valence must be at least 3")
    if M < 2:
        raise ValueError("truncation order must be at least 2")
    model = build_curve(j)
    if j % 2 == 0:
        nu = j // 2
        L = 2 * M
        # xi = u / (c (1-u)^nu) with u = 1 - z0
        u = Series.gen(L, "u")
        g = u * (Series([1, -1], L, "u") ** nu).inverse() / model.c_j
        uu = g.revert().with_var(XI)
        z0 = 1 - uu
        return SeriesContext(j, M, model, z0_of_xi=z0)
    xi2 = model.xi2.to_series(M, Y)
    if xi2.coeffs[0] != 0 or xi2.coeffs[1] == 0:
        raise ArithmeticError("curve is not invertible at the Gaussian point")
    y0 = xi2.revert().with_var(XI2)
    z0 = model.z0.compose_series(y0)
    # u0 = -xi W(xi2) with W^2 = (y0/xi2) z0
    Yq = Series(y0.coeffs[1:], M - 1, XI2)
    w2 = Yq * z0.truncate(M - 1)
    c0 = w2.coeffs[0]
    root = Fraction(_isqrt_exact(c0.numerator), _isqrt_exact(c0.denominator))
    W = (w2 / c0).power(Fraction(1, 2)) * root
    u0 = [Fraction(0)] * (2 * M)
    for k, a in enumerate(W.coeffs):
        u0[2 * k + 1] = -a
    return SeriesContext(j, M, model, y0_of_xi2=y0, z0_of_xi2=z0, u0_of_xi=Series(u0, 2 * M - 1, XI))


def _isqrt_exact(n: int) -> int:
    from math import isqrt
    r = isqrt(n)
    if r * r != n:
        raise ArithmeticError(f"{n} is not a perfect square")
    return r


# ---------------------------------------------------------------------------
# checks and derived series
# ---------------------------------------------------------------------------

def string_residual(ctx: SeriesContext) -> CheckReport:
    """u0 + xi phi0(u0, z0) = 0 and 1 - z0 - xi psi0(u0, z0) = 0 as xi-series."""
    j = ctx.j
    z0, u0 = ctx.z0_xi, ctx.u0_xi
    phi0, psi0 = phi_psi_extraction(j, 0)
    xi = Series.gen(ctx.xi_order, XI)
    r1 = u0 + xi * phi0(u0, z0)
    r2 = 1 - z0 - xi * psi0(u0, z0)
    fails = []
    for name, r in (("h-equation", r1), ("f-equation", r2)):
        bad = [k for k, c in enumerate(r.coeffs) if c]
        if bad:
            fails.append(f"{name} residual at order {bad[0]}")
    checks = {"z0(0)": z0.coeffs[0] == 1, "u0(0)": u0.coeffs[0] == 0}
    if ctx.j % 2:
        checks["y0(0)"] = ctx.y0_of_xi2.coeffs[0] == 0
        checks["u0 nonpositive"] = all(c <= 0 for c in u0.coeffs)
    fails += [k for k, ok in checks.items() if not ok]
    return CheckReport(f"string equations j={j} through xi^{ctx.xi_order}", not fails, fails)


def e1_dual_form(ctx: SeriesContext) -> Series:
    """1/24 log((f0x^2 - f0 h0x^2)/z0^2) from the series of f0, h0 (in xi)."""
    f0, h0 = ctx.f0, ctx.h0
    f0x, h0x = f0.dx(), h0.dx()
    disc = f0x * f0x - f0 * h0x * h0x
    z0 = WSeries(ctx.z0_xi, Fraction(0), ctx.j)
    return ((disc / (z0 * z0)).log() * Fraction(1, 24)).s


def e1_dual_check(ctx: SeriesContext) -> CheckReport:
    lhs = e1_dual_form(ctx)
    if ctx.j % 2:
        rhs = odd_to_xi(ctx.e1("full")).truncate(lhs.order)
    else:
        rhs = ctx.e1("full").truncate(lhs.order)
    # the dual form loses nothing in order: f0x, h0x keep the truncation
    d = lhs - rhs
    bad = [k for k, c in enumerate(d.coeffs) if c]
    fails = [f"first difference at xi^{bad[0]}"] if bad else []
    return CheckReport(f"E1 dual forms j={ctx.j} through xi^{lhs.order}", not fails, fails)


def e0_fh_form(ctx: SeriesContext) -> Series:
    """e0 written in (f0, h0) at x = 1, evaluated on the series (xi variable).

    1/2 log z0 + 3(j-2)/(4j) - (j-2)(j+1)/(j(j+2)) (f0 + h0^2/2)
                 + (j-2)^2/(2j(j+2)) (f0^2/2 + h0^2 f0)
    """
    j = ctx.j
    z0, u0 = ctx.z0_xi, ctx.u0_xi
    out = z0.log() * Fraction(1, 2) + Fraction(3 * (j - 2), 4 * j)
    out = out - (z0 + u0 * u0 / 2) * Fraction((j - 2) * (j + 1), j * (j + 2))
    out = out + (z0 * z0 / 2 + u0 * u0 * z0) * Fraction((j - 2) ** 2, 2 * j * (j + 2))
    return out


def e0_cross_check(ctx: SeriesContext) -> CheckReport:
    lhs = e0_fh_form(ctx)
    rhs = odd_to_xi(ctx.e0()) if ctx.j % 2 else ctx.e0()
    m = min(lhs.order, rhs.order)
    d = lhs.truncate(m) - rhs.truncate(m)
    bad = [k for k, c in enumerate(d.coeffs) if c]
    fails = [f"first difference at xi^{bad[0]}"] if bad else []
    return CheckReport(f"E0 curve form vs (f0, h0) form j={ctx.j}", not fails, fails)


def even_general_limit_check(ctx: SeriesContext, order: int = 8) -> CheckReport:
    """Even valence: closed e0, e1 in z0 against the general formulas at h0 = 0."""
    if ctx.j % 2:
        raise ValueError("even valence only")
    fails = []
    e0 = ctx.e0().truncate(order)
    if e0_fh_form(ctx).truncate(order) != e0:
        fails.append("e0")
    e1 = ctx.e1("full").truncate(order)
    if e1_dual_form(ctx).truncate(order) != e1:
        fails.append("e1")
    return CheckReport(f"even valence closed forms j={ctx.j} through xi^{order}", not fails, fails)


def f1_series(ctx: SeriesContext) -> Series:
    """f1 at x = 1 (= z1) from f1/f0 = (1/24) d_x^2 log(f0x^2 - f0 h0x^2); xi variable."""
    return ctx._memo("f1", lambda: _f1(ctx))


def _f1(ctx: SeriesContext) -> Series:
    f0, h0 = ctx.f0, ctx.h0
    f0x, h0x = f0.dx(), h0.dx()
    L = (f0x * f0x - f0 * h0x * h0x).log()
    return (f0 * L.dx().dx() * Fraction(1, 24)).s


def f1_alternative(ctx: SeriesContext, variant: str = "corrected") -> Series:
    """(f0/24) d_x[N/(f0x^2 - f0 h0x^2)] with N the x-derivative of the denominator.

    corrected: N = 2 f0x f0xx - f0x h0x^2 - 2 f0 h0x h0xx   (equals :func:`f1_series`)
    printed:   N = 2 f0x f0xx - f0x h0x^2 + 2 f0 h0x h0xx   (sign of the last term flipped)
    """
    if variant not in ("corrected", "printed"):
        raise ValueError(f"unknown variant {variant!r}")
    f0, h0 = ctx.f0, ctx.h0
    f0x, h0x = f0.dx(), h0.dx()
    f0xx, h0xx = f0x.dx(), h0x.dx()
    sign = -2 if variant == "corrected" else 2
    num = -(f0x * h0x * h0x) + f0x * f0xx * 2 + f0 * h0x * h0xx * sign
    den = f0x * f0x - f0 * h0x * h0x
    return (f0 * (num / den).dx() * Fraction(1, 24)).s


def z1_closed_j3() -> RatFn:
    """z1/z0 = 2 (y-2)^2 (5y^2 - 16y + 20) y^2 / Pi^4 for j = 3."""
    y = Poly.gen(Y)
    num = (y - 2) ** 2 * Poly([20, -16, 5], Y) * y ** 2
    return RatFn(num.scale(2), Poly([4, -8, 1], Y) ** 4)


def u2_closed_j3(factor: Fraction = Fraction(-1)) -> RatFn:
    """u2/u0 = factor (y-2)^3 (5y^2 - 16y + 20) y / Pi^4 for j = 3.

    The finite-n oracle fixes ``factor = -1``; ``-1/2`` gives a series exactly
    half as large.
    """
    y = Poly.gen(Y)
    num = (y - 2) ** 3 * Poly([20, -16, 5], Y) * y
    return RatFn(num.scale(Fraction(factor)), Poly([4, -8, 1], Y) ** 4)


def z1_from_closed(ctx: SeriesContext) -> Series:
    """z1 as an xi-series from :func:`z1_closed_j3` (j = 3 only)."""
    if ctx.j != 3:
        raise ValueError("closed form available for j = 3 only")
    r = z1_closed_j3().compose_series(ctx.y0_of_xi2) * ctx.z0_of_xi2
    return odd_to_xi(r).truncate(ctx.xi_order)


def u2_from_closed(ctx: SeriesContext, factor: Fraction = Fraction(-1)) -> Series:
    if ctx.j != 3:
        raise ValueError("closed form available for j = 3 only")
    r = odd_to_xi(u2_closed_j3(factor).compose_series(ctx.y0_of_xi2)).truncate(ctx.xi_order)
    return r * ctx.u0_xi


def h1_series(ctx: SeriesContext) -> Series:
    return (ctx.h0.dx() * Fraction(1, 2)).s


def h2_series(ctx: SeriesContext, mode: str = "derived") -> Series:
    """h2 at x = 1.

    derived:  (1/6) h0xx + (1/24) d_x Q
    summary:  d_x [(1/6) h0x + Q]
    with Q = (f0 h0x^3 - 2 f0 f0xx h0x + 2 f0 f0x h0xx)/(f0x^2 - f0 h0x^2).
    """
    f0, h0 = ctx.f0, ctx.h0
    f0x, h0x = f0.dx(), h0.dx()
    f0xx, h0xx = f0x.dx(), h0x.dx()
    if ctx.j % 2 == 0:
        return Series([], ctx.xi_order, XI)
    Q = (f0 * h0x ** 3 - f0 * f0xx * h0x * 2 + f0 * f0x * h0xx * 2) / (f0x * f0x - f0 * h0x * h0x)
    if mode == "derived":
        return (h0xx * Fraction(1, 6) + Q.dx() * Fraction(1, 24)).s
    if mode == "summary":
        return (h0x * Fraction(1, 6) + Q).dx().s
    raise ValueError(f"unknown h2 mode {mode!r}")


def f1_h1_h2_series(ctx: SeriesContext, h2_mode: str = "derived") -> tuple[Series, Series, Series]:
    return f1_series(ctx), h1_series(ctx), h2_series(ctx, h2_mode)


def exchange_check(ctx: SeriesContext) -> CheckReport:
    """w d_w f0 = f0 + ((j-2)/2) xi d_xi f0 against the hodograph derivative (odd j).

    The left side is computed independently as f0w = A11/det from the
    Jacobian of the hodograph equations evaluated on the series.
    """
    j = ctx.j
    z0, u0 = ctx.z0_xi, ctx.u0_xi
    xi = Series.gen(ctx.xi_order, XI)
    p1, s1 = phi_psi_extraction(j, 1)
    a11 = 1 + xi * p1(u0, z0)
    a12 = xi * s1(u0, z0) / z0
    det = a11 * a11 - z0 * a12 * a12
    f0w = a11 / det
    h0w = -a12 / det
    fails = []
    if f0w != x_deriv(z0, 1, j):
        fails.append("f0")
    if h0w != x_deriv(u0, Fraction(1, 2), j):
        fails.append("h0")
    return CheckReport(f"exchange relations j={j}", not fails, fails)


def bernoulli_residual(ctx: SeriesContext, h1: Series) -> Series:
    """h1 - (1/2) d_x h0 for an externally supplied h1 series (xi variable)."""
    return h1 - (ctx.h0.dx() * Fraction(1, 2)).s.truncate(h1.order)


def series_json(series: Series, label: str, meta: dict | None = None) -> str:
    doc = {"label": label, "variable": series.var, "order": series.order,
           "coefficients": [rat_str(c) for c in series.coeffs]}
    if meta:
        doc.update(meta)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
