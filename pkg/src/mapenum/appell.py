"""Appell polynomials generated by inverse modified Bessel functions.

``S_n`` is the Appell sequence with exponential generating function
``I_0(2s) exp(s*zeta)`` and ``R_n`` the one generated by
``(I_1(2s)/s) exp(s*zeta)``.  Both are built from explicit binomial sums:

    S_n(zeta) = sum_{k even} C(n, k) C(k, k/2)   zeta**(n-k)
    R_n(zeta) = sum_{k even} C(n, k) Cat(k/2)    zeta**(n-k)

The spectral-curve building blocks are the even/odd parts evaluated at
``zeta = sqrt(y)``:

    B12(nu)       = S_{2nu}(sqrt y)                 (polynomial of degree nu in y)
    sqrt(y)*B11   = sqrt(y) * R'_{2nu}(sqrt y)      (polynomial in y, no constant term)
    F1hat(nu)     = R_{2nu}(sqrt y) / (2nu + 1)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .exact import IsolatedRoot, Poly, sturm_isolate

ZETA = "zeta"
Y = "y"


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def S(n: int) -> Poly:
    c = [0] * (n + 1)
    for k in range(0, n + 1, 2):
        c[n - k] = comb(n, k) * comb(k, k // 2)
    return Poly(c, ZETA)


@lru_cache(maxsize=None)
def R(n: int) -> Poly:
    c = [0] * (n + 1)
    for k in range(0, n + 1, 2):
        c[n - k] = comb(n, k) * catalan(k // 2)
    return Poly(c, ZETA)


def S_multinomial(n: int) -> Poly:
    """S_n from the trinomial form sum_mu n!/((n-2(nu-mu))!... ) used for even/odd n."""
    nu, odd = divmod(n, 2)
    c = [0] * (n + 1)
    for mu in range(nu + 1):
        p = 2 * mu + odd
        c[p] = factorial(n) // (factorial(p) * factorial(nu - mu) ** 2)
    return Poly(c, ZETA)


def R_multinomial(n: int) -> Poly:
    """R_n via its derivative identities: R'_{2nu+1} = sum multinomial(2nu+1; 2mu, nu-mu, nu-mu+1)."""
    nu, odd = divmod(n, 2)
    c = [Fraction(0)] * (n + 1)
    for mu in range(nu + 1):
        p = 2 * mu + odd
        # coefficient of zeta^p in R_n: n!/(p! (nu-mu)! (nu-mu+1)!)
        c[p] = Fraction(factorial(n), factorial(p) * factorial(nu - mu) * factorial(nu - mu + 1))
    return Poly(c, ZETA)


def B12(nu: int) -> Poly:
    return S(2 * nu).even_to_square(Y)


def B11(nu: int) -> Poly:
    """R'_{2nu} as a polynomial in zeta (odd); evaluate at zeta = sqrt(y)."""
    return R(2 * nu).deriv()


def sB11(nu: int) -> Poly:
    """sqrt(y) * B11(nu) as a polynomial in y."""
    return (Poly.gen(ZETA) * B11(nu)).even_to_square(Y)


def F1hat(nu: int) -> Poly:
    return (R(2 * nu) / (2 * nu + 1)).even_to_square(Y)


def Shat(nu: int) -> Poly:
    """B12 - sqrt(y) B11, the polynomial whose zeros are the stagnation points."""
    return B12(nu) - sB11(nu)


def B12_recursive(nu: int) -> Poly:
    """B12(nu) = 2nu(2nu-1) * double antiderivative of S_{2nu-2} + C(2nu, nu), in zeta."""
    if nu == 0:
        return Poly([1], Y)
    inner = S(2 * nu - 2).antideriv().antideriv()
    return (inner * (2 * nu * (2 * nu - 1)) + comb(2 * nu, nu)).even_to_square(Y)


def B11_recursive(nu: int) -> Poly:
    """B11(nu) = 2nu(2nu-1) * antiderivative of R_{2nu-2}, zero constant, in zeta."""
    if nu == 0:
        return Poly([], ZETA)
    return R(2 * nu - 2).antideriv() * (2 * nu * (2 * nu - 1))


@dataclass(frozen=True)
class AppellFamily:
    nmax: int
    S: tuple = field(repr=False)
    R: tuple = field(repr=False)
    B12: tuple = field(repr=False)
    B11s: tuple = field(repr=False)
    F1hat: tuple = field(repr=False)


def build_appell(nmax: int) -> AppellFamily:
    if nmax < 1:
        raise ValueError("nmax must be at least 1")
    Ss = tuple(S(n) for n in range(nmax + 1))
    Rs = tuple(R(n) for n in range(nmax + 1))
    for n in range(nmax + 1):
        if S_multinomial(n) != Ss[n] or R_multinomial(n) != Rs[n]:
            raise ArithmeticError(f"binomial and multinomial constructions disagree at n={n}")
    nus = range(nmax // 2 + 1)
    for nu in nus:
        if B12_recursive(nu) != B12(nu):
            raise ArithmeticError(f"B12 recursion disagrees at nu={nu}")
        if B11_recursive(nu) != B11(nu):
            raise ArithmeticError(f"B11 recursion disagrees at nu={nu}")
    return AppellFamily(
        nmax=nmax, S=Ss, R=Rs,
        B12=tuple(B12(nu) for nu in nus),
        B11s=tuple(sB11(nu) for nu in nus),
        F1hat=tuple(F1hat(nu) for nu in nus),
    )


@dataclass
class CheckReport:
    name: str
    passed: bool
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = f" ({self.failures[0]})" if self.failures else ""
        return f"[{tag}] {self.name}{extra}"


def appell_derivative_check(family: AppellFamily) -> CheckReport:
    fails = []
    for n in range(1, family.nmax + 1):
        if family.S[n].deriv() != family.S[n - 1] * n:
            fails.append(f"S'_{n} != {n} S_{n-1}")
        if family.R[n].deriv() != family.R[n - 1] * n:
            fails.append(f"R'_{n} != {n} R_{n-1}")
    return CheckReport("appell derivative recursion", not fails, fails)


def generating_function_check(nmax: int) -> CheckReport:
    """Compare s^k coefficients of I0(2s)e^{s zeta} and (I1(2s)/s)e^{s zeta} with S_k/k!, R_k/k!.

    The Bessel series are expanded independently from their defining sums
    sum s^{2m}/(m!)^2 and sum s^{2m}/(m!(m+1)!).
    """
    fails = []
    i0 = [Fraction(1, factorial(k // 2) ** 2) if k % 2 == 0 else Fraction(0) for k in range(nmax + 1)]
    i1s = [Fraction(1, factorial(k // 2) * factorial(k // 2 + 1)) if k % 2 == 0 else Fraction(0)
           for k in range(nmax + 1)]
    for k in range(nmax + 1):
        # Cauchy product with e^{s zeta} = sum zeta^i s^i / i!
        sk = Poly([0] * 0, ZETA)
        rk = Poly([], ZETA)
        for i in range(k + 1):
            mono = Poly.monomial(i, Fraction(1, factorial(i)), ZETA)
            sk = sk + mono * i0[k - i]
            rk = rk + mono * i1s[k - i]
        if sk != S(k) / factorial(k):
            fails.append(f"S_{k}")
        if rk != R(k) / factorial(k):
            fails.append(f"R_{k}")
    return CheckReport("appell generating functions", not fails, fails)


def binomial_identity_check(nmax: int, sigmas=(1, -2)) -> CheckReport:
    fails = []
    z = Poly.gen(ZETA)
    for sigma in sigmas:
        for n in range(nmax + 1):
            lhs = S(n).compose(z + sigma)
            rhs = Poly([], ZETA)
            for k in range(n + 1):
                rhs = rhs + Poly.monomial(n - k, comb(n, k) * S(k)(Fraction(sigma)), ZETA)
            if lhs != rhs:
                fails.append(f"n={n}, sigma={sigma}")
    return CheckReport("appell binomial identity", not fails, fails)


def divisibility_check(nu: int) -> Poly:
    """Exact quotient of (2j-2) B12 - j sqrt(y) B11 by (4 - y), j = 2nu + 1."""
    if nu < 1:
        raise ValueError("nu must be at least 1")
    j = 2 * nu + 1
    num = B12(nu) * (2 * j - 2) - sB11(nu) * j
    q, r = num.divmod(Poly([4, -1], Y))
    if not r.is_zero():
        raise ArithmeticError(f"remainder {r} is nonzero at nu={nu}")
    return q


def imaginary_axis_poly(p: Poly) -> Poly:
    """The real polynomial whose real roots are the imaginary-axis roots of p.

    For p of parity n, p(i x) = i^n q(x) with q real.
    """
    n = p.degree
    c = []
    for k, a in enumerate(p.coeffs):
        # i^k / i^n = i^(k-n); k - n is even for parity polynomials
        e = (k - n) % 4
        if a == 0:
            c.append(a)
            continue
        if e % 2:
            raise ValueError("polynomial lacks definite parity")
        c.append(a if e == 0 else -a)
    return Poly(c, "x")


def _interlace(inner: list[IsolatedRoot], outer: list[IsolatedRoot], bits: int = 60) -> bool:
    a = [float(r.value(bits)) for r in outer]
    b = [float(r.value(bits)) for r in inner]
    if len(b) != len(a) - 1:
        return False
    return all(a[i] < b[i] < a[i + 1] for i in range(len(b)))


def interlacing_check(nmax: int) -> CheckReport:
    """Roots of S_n(i x), R_n(i x) are n simple real symmetric roots interlacing those of index n-1."""
    if nmax < 2:
        raise ValueError("nmax must be at least 2")
    fails = []
    roots = {}
    for name, fam in (("S", S), ("R", R)):
        prev = None
        for n in range(1, nmax + 1):
            q = imaginary_axis_poly(fam(n))
            rs = sturm_isolate(q)
            if len(rs) != n:
                fails.append(f"{name}_{n}(ix) has {len(rs)} real roots, expected {n}")
            vals = sorted(float(r.value(60)) for r in rs)
            if any(abs(v + w) > 1e-12 for v, w in zip(vals, reversed(vals))):
                fails.append(f"{name}_{n} roots not symmetric")
            if prev is not None and not _interlace(prev, rs):
                fails.append(f"{name}_{n-1} roots do not interlace {name}_{n}")
            roots[(name, n)] = vals
            prev = rs
    return CheckReport("appell zero interlacing", not fails, fails, {"roots": roots})
