"""String polynomials phi_m, psi_m of the tridiagonal symbol r*eta + h + r/eta.

With r**2 = f and N = j - m - 1,

    phi_m = (j)_{m+1}     [eta^0]  (r eta + h + r/eta)**N
    psi_m = (j)_{m+1} r   [eta^-1] (r eta + h + r/eta)**N

where (j)_k is the falling factorial.  Both turn out to be polynomials in
(h, f); the Appell form

    phi_m = (j)_{m+1} r**N     S_N(h/r)
    psi_m = (j)_{m+1} r**(N+1) R'_N(h/r)

is the independent second route.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .appell import S, R, CheckReport
from .exact import Series, as_rat

ZERO = Fraction(0)


def falling(j: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= j - i
    return out


class HRPoly:
    """Polynomial in h and r (r**2 = f), stored as {(a, b): coeff} for h**a r**b."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Fraction] | None = None):
        clean = {}
        for k, v in (terms or {}).items():
            v = as_rat(v)
            if v:
                clean[k] = v
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("HRPoly is immutable")

    @classmethod
    def const(cls, c) -> "HRPoly":
        return cls({(0, 0): c})

    def __add__(self, other: "HRPoly") -> "HRPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return HRPoly(out)

    def __neg__(self):
        return HRPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return HRPoly({k: v * other for k, v in self.terms.items()})
        out: dict = {}
        for (a, b), v in self.terms.items():
            for (c, d), w in other.terms.items():
                key = (a + c, b + d)
                out[key] = out.get(key, ZERO) + v * w
        return HRPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, HRPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def is_poly_in_f(self) -> bool:
        return all(b % 2 == 0 for _, b in self.terms)

    def hf_terms(self) -> dict[tuple[int, int], Fraction]:
        """{(a, c): coeff} for h**a f**c; requires even r powers."""
        if not self.is_poly_in_f():
            raise ValueError("odd power of sqrt(f) present")
        return {(a, b // 2): v for (a, b), v in self.terms.items()}

    def d_h(self) -> "HRPoly":
        return HRPoly({(a - 1, b): v * a for (a, b), v in self.terms.items() if a})

    def d_f(self) -> "HRPoly":
        """Partial derivative in f = r**2, i.e. (1/(2r)) d/dr."""
        return HRPoly({(a, b - 2): v * Fraction(b, 2) for (a, b), v in self.terms.items() if b})

    def div_f(self) -> "HRPoly":
        """Divide by f = r**2 (must be exact)."""
        if any(b < 2 for _, b in self.terms):
            raise ArithmeticError("not divisible by f")
        return HRPoly({(a, b - 2): v for (a, b), v in self.terms.items()})

    def __call__(self, h, f):
        """Evaluate at numbers or series (h, f); only even r powers allowed."""
        total = None
        for (a, c), v in self.hf_terms().items():
            term = _power(h, a) * _power(f, c) * v
            total = term if total is None else total + term
        if total is None:
            return 0 * h
        return total

    def __repr__(self):
        parts = []
        for (a, b), v in sorted(self.terms.items()):
            parts.append(f"{v}*h^{a}*r^{b}")
        return "HRPoly(" + " + ".join(parts) + ")"


def _power(x, n: int):
    if n == 0:
        return 1 if not isinstance(x, Series) else Series.const(1, x.order, x.var)
    out = x
    for _ in range(n - 1):
        out = out * x
    return out


def _symbol_power(N: int) -> dict[int, HRPoly]:
    """Laurent coefficients of (r eta + h + r/eta)**N by repeated convolution."""
    step = {1: HRPoly({(0, 1): 1}), 0: HRPoly({(1, 0): 1}), -1: HRPoly({(0, 1): 1})}
    cur = {0: HRPoly.const(1)}
    for _ in range(N):
        nxt: dict[int, HRPoly] = {}
        for k, p in cur.items():
            for d, q in step.items():
                nxt[k + d] = nxt.get(k + d, HRPoly()) + p * q
        cur = nxt
    return cur


def phi_psi_extraction(j: int, m: int) -> tuple[HRPoly, HRPoly]:
    if j < 1 or not (-1 <= m <= j - 1):
        raise ValueError(f"need j >= 1 and -1 <= m <= j-1, got j={j}, m={m}")
    N = j - m - 1
    lau = _symbol_power(N)
    pre = falling(j, m + 1)
    phi = lau.get(0, HRPoly()) * pre
    psi = lau.get(-1, HRPoly()) * HRPoly({(0, 1): 1}) * pre
    return phi, psi


def _homogenize(p, degree: int) -> HRPoly:
    """r**degree * p(h/r) for a polynomial p in zeta."""
    return HRPoly({(k, degree - k): a for k, a in enumerate(p.coeffs) if a})


def phi_psi_appell(j: int, m: int) -> tuple[HRPoly, HRPoly]:
    if j < 1 or not (-1 <= m <= j - 1):
        raise ValueError(f"need j >= 1 and -1 <= m <= j-1, got j={j}, m={m}")
    N = j - m - 1
    pre = falling(j, m + 1)
    phi = _homogenize(S(N), N) * pre
    psi = _homogenize(R(N).deriv(), N + 1) * pre
    return phi, psi


@dataclass(frozen=True)
class StringPoly:
    j: int
    m: int
    kind: str
    value: HRPoly

    def __call__(self, h, f):
        return self.value(h, f)


def string_phi_psi(j: int, m: int) -> tuple[StringPoly, StringPoly]:
    """phi_m and psi_m for valence j, with the Appell route as a cross-check."""
    if j < 3:
        raise ValueError("valence must be at least 3")
    if not (-1 <= m <= j - 1):
        raise ValueError(f"index m={m} outside -1..{j - 1}")
    phi, psi = phi_psi_extraction(j, m)
    aphi, apsi = phi_psi_appell(j, m)
    if phi != aphi or psi != apsi:
        raise ArithmeticError(f"extraction and Appell routes differ at j={j}, m={m}")
    if not (phi.is_poly_in_f() and psi.is_poly_in_f()):
        raise ArithmeticError("string polynomial is not polynomial in f")
    return StringPoly(j, m, "phi", phi), StringPoly(j, m, "psi", psi)


def even_valence_printed_form(nu: int, m: int) -> tuple[HRPoly, HRPoly]:
    """The closed even-valence, h = 0 expressions in their printed indexing.

    m even:  phi = (2nu)_{m+1} C(2nu-m, nu-m/2) f^{nu-m/2},  psi = 0
    m odd:   phi = 0,  psi = (2nu)_{m+1} C(2nu-m, nu-(m+1)/2) f^{nu-(m-1)/2}

    These match (j)_{m+1} [eta^k](...)^{j-m}, i.e. the symbol power is one
    higher than in the definition of phi_m, psi_m.
    """
    from math import comb
    j = 2 * nu
    pre = falling(j, m + 1)
    if m % 2 == 0:
        return HRPoly({(0, 2 * nu - m): pre * comb(2 * nu - m, nu - m // 2)}), HRPoly()
    return HRPoly(), HRPoly({(0, 2 * nu - m + 1): pre * comb(2 * nu - m, nu - (m + 1) // 2)})


def restrict_h0(p: HRPoly) -> HRPoly:
    return HRPoly({k: v for k, v in p.terms.items() if k[0] == 0})


def general_potential_phi(tvec: Sequence, m: int, gaussian: bool = True) -> tuple[HRPoly, HRPoly]:
    """phi_m, psi_m for V = lambda^2/2 + sum_j t_j lambda^j (tvec = (t_1, ..., t_J)).

    Linear in the couplings: sum_j t_j phi_m^{(j)}, the Gaussian part being
    the j = 2 term with coefficient 1/2.  Valences with m > j - 1 contribute 0.
    """
    if not tvec:
        raise ValueError("empty coupling vector")
    phi, psi = HRPoly(), HRPoly()
    coeffs = {j: as_rat(t) for j, t in enumerate(tvec, start=1)}
    if gaussian:
        coeffs[2] = coeffs.get(2, ZERO) + Fraction(1, 2)
    for j, t in coeffs.items():
        if t == 0 or m > j - 1:
            continue
        a, b = phi_psi_extraction(j, m)
        phi = phi + a * t
        psi = psi + b * t
    return phi, psi


def unwinding_algebraic(j: int, m: int) -> CheckReport:
    """Chain-rule form: d_h phi_{m-1} = phi_m, f d_f phi_{m-1} = psi_m, d_h psi_{m-1} = psi_m, d_f psi_{m-1} = phi_m."""
    fails = []
    p0, s0 = phi_psi_extraction(j, m - 1)
    p1, s1 = phi_psi_extraction(j, m)
    if p0.d_h() != p1:
        fails.append("d_h phi")
    if p0.d_f() * HRPoly({(0, 2): 1}) != s1:
        fails.append("d_f phi")
    if s0.d_h() != s1:
        fails.append("d_h psi")
    if s0.d_f() != p1:
        fails.append("d_f psi")
    return CheckReport(f"unwinding (algebraic) j={j} m={m}", not fails, fails)


def unwinding_check(j: int, m: int, ctx) -> CheckReport:
    """Series form of the unwinding identity at x = 1.

    ``ctx`` supplies u0 (h0 at x = 1) and z0 (f0 at x = 1) as series in xi,
    and x-derivatives are taken through the self-similar scaling
    x d/dx = (weight) + ((j-2)/2) xi d/dxi.
    """
    from .genfun import x_deriv
    jj = ctx.j
    u0, z0 = ctx.u0_xi, ctx.z0_xi
    p0, s0 = phi_psi_extraction(j, m - 1)
    p1, s1 = phi_psi_extraction(j, m)
    h0x = x_deriv(u0, Fraction(1, 2), jj)
    f0x = x_deriv(z0, 1, jj)
    # weights: phi_{m-1} has weight (j-m)/2, psi_{m-1} weight (j-m+1)/2
    lhs_phi = x_deriv(p0(u0, z0), Fraction(j - m, 2), jj)
    lhs_psi = x_deriv(s0(u0, z0), Fraction(j - m + 1, 2), jj)
    rhs_phi = h0x * p1(u0, z0) + f0x / z0 * s1(u0, z0)
    rhs_psi = f0x * p1(u0, z0) + h0x * s1(u0, z0)
    fails = []
    for name, a, b in (("phi", lhs_phi, rhs_phi), ("psi", lhs_psi, rhs_psi)):
        d = a - b
        bad = [k for k, c in enumerate(d.coeffs) if c != 0]
        if bad:
            fails.append(f"{name} residual nonzero at order {bad[0]}")
    return CheckReport(f"unwinding j={j} m={m}", not fails, fails, {"order": lhs_phi.order})
