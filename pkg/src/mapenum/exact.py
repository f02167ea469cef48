"""Exact arithmetic kernel.

Rationals are :class:`fractions.Fraction`.  On top of them this module
provides dense univariate polynomials (:class:`Poly`), truncated power
series (:class:`Series`), reduced rational functions (:class:`RatFn`) and
Sturm-sequence real root isolation (:class:`IsolatedRoot`).

Every object is immutable.  Polynomials and series carry a variable tag
(``"zeta"``, ``"y"``, ``"s"``, ``"z"``, ``"eps"``, ``"t"``, ``"xi"``,
``"xi2"``, ...) which is only used to catch accidental mixing and for
printing.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import mpmath

Rat = Fraction
Scalar = Union[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def rat_str(x: Fraction) -> str:
    """Render a rational as ``p/q`` (or ``p`` when integral)."""
    x = as_rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _strip(coeffs: Iterable) -> tuple:
    c = [as_rat(a) for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction))


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Dense univariate polynomial with rational coefficients.

    ``coeffs[k]`` is the coefficient of ``var**k``.  Trailing zeros are
    stripped; the zero polynomial has ``degree == -1``.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        object.__setattr__(self, "coeffs", _strip(coeffs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, c: Scalar, var: str = "x") -> "Poly":
        return cls([c], var)

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1, var: str = "x") -> "Poly":
        return cls([0] * k + [c], var)

    @classmethod
    def gen(cls, var: str = "x") -> "Poly":
        return cls([0, 1], var)

    @classmethod
    def from_roots(cls, roots: Sequence[Scalar], var: str = "x") -> "Poly":
        p = cls([1], var)
        for r in roots:
            p = p * cls([-as_rat(r), 1], var)
        return p

    # basic properties -------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def __len__(self):
        return len(self.coeffs)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.var != self.var and self.degree > 0 and other.degree > 0:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if _is_scalar(other):
            return Poly([other], self.var)
        return NotImplemented

    def _var_with(self, other: "Poly") -> str:
        return self.var if self.degree > 0 or other.degree <= 0 else other.var

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly([self[k] + o[k] for k in range(n)], self._var_with(o))

    __radd__ = __add__

    def __neg__(self):
        return Poly([-a for a in self.coeffs], self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.coeffs or not o.coeffs:
            return Poly([], self._var_with(o))
        out = [ZERO] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return Poly(out, self._var_with(o))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Scalar) -> "Poly":
        c = as_rat(c)
        return Poly([a * c for a in self.coeffs], self.var)

    def __truediv__(self, other):
        if _is_scalar(other):
            return self.scale(ONE / as_rat(other))
        return NotImplemented

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly([], self.var), self
        quo = [ZERO] * (dq + 1)
        lead = other.lc()
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            quo[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] -= c * b
        return Poly(quo, self.var), Poly(rem[: len(other.coeffs) - 1], self.var)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"inexact polynomial division, remainder {r}")
        return q

    # calculus and substitution ----------------------------------------
    def deriv(self) -> "Poly":
        return Poly([k * a for k, a in enumerate(self.coeffs)][1:], self.var)

    def antideriv(self, const: Scalar = 0) -> "Poly":
        return Poly([as_rat(const)] + [a / (k + 1) for k, a in enumerate(self.coeffs)], self.var)

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        if isinstance(acc, int):
            return Fraction(acc)
        return acc

    def eval_mp(self, x):
        """Horner evaluation in mpmath at the ambient precision."""
        acc = mpmath.mpf(0)
        for a in reversed(self.coeffs):
            acc = acc * x + mpmath.mpf(a.numerator) / a.denominator
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly([], inner.var)
        for a in reversed(self.coeffs):
            acc = acc * inner + a
        return acc

    def scale_var(self, c: Scalar) -> "Poly":
        """Return p(c*x)."""
        c = as_rat(c)
        return Poly([a * c ** k for k, a in enumerate(self.coeffs)], self.var)

    def with_var(self, var: str) -> "Poly":
        return Poly(self.coeffs, var)

    def is_even(self) -> bool:
        return all(a == 0 for a in self.coeffs[1::2])

    def is_odd(self) -> bool:
        return all(a == 0 for a in self.coeffs[0::2])

    def even_to_square(self, var: str = "y") -> "Poly":
        """For an even polynomial in s return q with q(s**2) = p(s)."""
        if not self.is_even():
            raise ValueError("polynomial has odd-degree terms")
        return Poly(self.coeffs[0::2], var)

    def subs_square(self, var: str = "s") -> "Poly":
        """Return p(s**2) as a polynomial in s."""
        out = []
        for a in self.coeffs:
            out.extend([a, ZERO])
        return Poly(out, var)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(ONE / self.lc())

    def content_primitive(self) -> tuple[Fraction, "Poly"]:
        """Split p = c * q with q having coprime integer coefficients and positive lc."""
        from math import gcd, lcm
        if self.is_zero():
            return ZERO, self
        den = 1
        for a in self.coeffs:
            den = lcm(den, a.denominator)
        nums = [int(a * den) for a in self.coeffs]
        g = 0
        for n in nums:
            g = gcd(g, n)
        if nums[-1] < 0:
            g = -g
        return Fraction(g, den), Poly([Fraction(n, g) for n in nums], self.var)

    # comparison / display ---------------------------------------------
    def __eq__(self, other):
        if _is_scalar(other):
            other = Poly([other], self.var)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[rat_str(a) for a in self.coeffs]}, var={self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[k]
            if a == 0:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            if mono and abs(a) == 1:
                body = mono
            else:
                body = rat_str(abs(a)) + ("*" + mono if mono else "")
            terms.append(("-" if a < 0 else "+", body))
        s = "".join(f" {sg} {b}" for sg, b in terms).strip()
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _primitive_ints(p: Poly) -> list[int]:
    return [int(a) for a in p.content_primitive()[1].coeffs]


def _int_primitive(c: list[int]) -> list[int]:
    from math import gcd
    g = 0
    for a in c:
        g = gcd(g, a)
    if g > 1:
        c = [a // g for a in c]
    return c


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer coefficient lists (low degree first)."""
    a = list(a)
    lb, db = b[-1], len(b) - 1
    while len(a) - 1 >= db and a:
        la, shift = a[-1], len(a) - 1 - db
        a = [x * lb for x in a]
        for i, bi in enumerate(b):
            a[shift + i] -= la * bi
        while a and a[-1] == 0:
            a.pop()
    return a


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd via the primitive polynomial remainder sequence (gcd(0, 0) = 0).

    Working with primitive integer polynomials keeps coefficient growth
    linear, which matters for the degree ~ 50 numerators met on the curve.
    """
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    a, b = _primitive_ints(p), _primitive_ints(q)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_prem(a, b)
        a, b = b, (_int_primitive(r) if r else r)
    return Poly(a, p.var if p.degree > 0 else q.var).monic()


def squarefree_part(p: Poly) -> Poly:
    if p.is_zero():
        raise ValueError("zero polynomial has no squarefree part")
    if p.degree <= 0:
        return Poly([1], p.var)
    return p.exact_div(poly_gcd(p, p.deriv())).monic()


# ---------------------------------------------------------------------------
# truncated power series
# ---------------------------------------------------------------------------

class Series:
    """Power series known exactly through ``x**order``."""

    __slots__ = ("coeffs", "order", "var")

    def __init__(self, coeffs: Iterable, order: int, var: str = "x"):
        if order < 0:
            raise ValueError("negative truncation order")
        c = [as_rat(a) for a in list(coeffs)[: order + 1]]
        c += [ZERO] * (order + 1 - len(c))
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    @classmethod
    def from_poly(cls, p: Poly, order: int, var: str | None = None) -> "Series":
        return cls(p.coeffs, order, var or p.var)

    @classmethod
    def const(cls, c: Scalar, order: int, var: str = "x") -> "Series":
        return cls([c], order, var)

    @classmethod
    def gen(cls, order: int, var: str = "x") -> "Series":
        return cls([0, 1], order, var)

    def __getitem__(self, k: int) -> Fraction:
        if k > self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k] if k >= 0 else ZERO

    def valuation(self) -> int | None:
        for k, a in enumerate(self.coeffs):
            if a != 0:
                return k
        return None

    def _coerce(self, other):
        if isinstance(other, Series):
            if other.var != self.var:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, Poly):
            return Series(other.coeffs, self.order, self.var)
        if _is_scalar(other):
            return Series([other], self.order, self.var)
        return NotImplemented

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return Series(self.coeffs, order, self.var)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        m = min(self.order, o.order)
        return Series([self.coeffs[k] + o.coeffs[k] for k in range(m + 1)], m, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Series([-a for a in self.coeffs], self.order, self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            c = as_rat(other)
            return Series([a * c for a in self.coeffs], self.order, self.var)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        m = min(self.order, o.order)
        a, b = self.coeffs, o.coeffs
        out = [ZERO] * (m + 1)
        for i in range(m + 1):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(m + 1 - i):
                if b[j]:
                    out[i + j] += ai * b[j]
        return Series(out, m, self.var)

    __rmul__ = __mul__

    def inverse(self) -> "Series":
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = ONE / a[0]
        out = [inv0]
        for n in range(1, self.order + 1):
            acc = sum((a[k] * out[n - k] for k in range(1, n + 1)), ZERO)
            out.append(-acc * inv0)
        return Series(out, self.order, self.var)

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * (ONE / as_rat(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Series([1], self.order, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def deriv(self) -> "Series":
        """Termwise derivative; exact through order - 1."""
        if self.order == 0:
            return Series([], 0, self.var)
        return Series([k * a for k, a in enumerate(self.coeffs)][1:], self.order - 1, self.var)

    def integ(self, const: Scalar = 0) -> "Series":
        """Antiderivative; exact through order + 1."""
        return Series([as_rat(const)] + [a / (k + 1) for k, a in enumerate(self.coeffs)],
                      self.order + 1, self.var)

    def euler(self) -> "Series":
        """x d/dx, which keeps the truncation order."""
        return Series([k * a for k, a in enumerate(self.coeffs)], self.order, self.var)

    def log(self) -> "Series":
        if self.coeffs[0] != 1:
            raise ValueError(f"log needs constant term 1, got {rat_str(self.coeffs[0])}")
        d = self.euler() / self
        return Series([0] + [d.coeffs[k] / k for k in range(1, self.order + 1)], self.order, self.var)

    def exp(self) -> "Series":
        if self.coeffs[0] != 0:
            raise ValueError("exp needs zero constant term to stay rational")
        # e' = g' e, solved order by order
        g = self.euler().coeffs
        out = [ONE]
        for n in range(1, self.order + 1):
            out.append(sum((g[k] * out[n - k] for k in range(1, n + 1)), ZERO) / n)
        return Series(out, self.order, self.var)

    def power(self, alpha: Scalar) -> "Series":
        """f**alpha for rational alpha when f(0) = 1."""
        alpha = as_rat(alpha)
        if alpha.denominator == 1 and alpha >= 0:
            return self ** int(alpha)
        return (self.log() * alpha).exp()

    def compose(self, inner: "Series") -> "Series":
        """self(inner(x)); inner must have zero constant term."""
        if inner.coeffs[0] != 0:
            raise ValueError("inner series must have zero constant term")
        m = inner.order
        acc = Series([], m, inner.var)
        for a in reversed(self.coeffs[: m + 1]):
            acc = acc * inner + a
        if self.order < m:
            # terms beyond self.order are unknown; inner has valuation >= 1
            v = inner.valuation() or m + 1
            m = min(m, (self.order + 1) * v - 1)
            acc = acc.truncate(m)
        return acc

    def revert(self) -> "Series":
        """Compositional inverse g with self(g(x)) = x, by Newton iteration.

        Each step g <- g - (f(g) - x) / f'(g) doubles the number of
        correct coefficients.
        """
        f = self.coeffs
        if f[0] != 0:
            raise ValueError("reversion needs zero constant term")
        if self.order < 1 or f[1] == 0:
            raise ValueError("reversion needs an invertible linear coefficient")
        M = self.order
        x = Series.gen(M, self.var)
        g = Series([0, ONE / f[1]], M, self.var)
        df = Series(list(self.deriv().coeffs) + [0], M, self.var)
        correct = 1
        while correct < M:
            g = g - (self.compose(g) - x) / df.compose(g)
            correct *= 2
        return g

    def subs_monomial(self, c: Scalar, k: int, order: int | None = None,
                      var: str | None = None) -> "Series":
        """Return f(c * x**k) truncated at the natural order k*order."""
        c = as_rat(c)
        new_order = k * self.order + (k - 1) if order is None else order
        out = [ZERO] * (new_order + 1)
        for i, a in enumerate(self.coeffs):
            if i * k <= new_order:
                out[i * k] = a * c ** i
        if order is not None and order > k * self.order + (k - 1):
            raise ValueError("requested order exceeds known coefficients")
        return Series(out, new_order, var or self.var)

    def even_part_in_square(self, var: str) -> "Series":
        """For an even series in x return the series in w = x**2."""
        if any(a != 0 for a in self.coeffs[1::2]):
            raise ValueError("series has odd terms")
        return Series(self.coeffs[0::2], self.order // 2, var)

    def shift(self, k: int) -> "Series":
        """Multiply by x**k (k >= 0) keeping the order."""
        return Series([ZERO] * k + list(self.coeffs), self.order, self.var)

    def with_var(self, var: str) -> "Series":
        return Series(self.coeffs, self.order, var)

    def to_poly(self) -> Poly:
        return Poly(self.coeffs, self.var)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        m = min(self.order, other.order)
        return self.var == other.var and self.coeffs[: m + 1] == other.coeffs[: m + 1]

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def __repr__(self):
        return f"Series({[rat_str(a) for a in self.coeffs]}, order={self.order}, var={self.var!r})"


def series_revert(f: Series) -> Series:
    return f.revert()


def series_log(f: Series) -> Series:
    return f.log()


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFn:
    """Reduced quotient num/den with den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, RatFn) and den is None:
            n, d = num.num, num.den
        else:
            n = num if isinstance(num, Poly) else Poly([num])
            d = Poly([1], n.var) if den is None else (den if isinstance(den, Poly) else Poly([den], n.var))
            if d.is_zero():
                raise ZeroDivisionError("rational function with zero denominator")
            if n.is_zero():
                n, d = Poly([], n.var), Poly([1], d.var)
            else:
                g = poly_gcd(n, d)
                if g.degree > 0:
                    n, d = n.exact_div(g), d.exact_div(g)
                lead = d.lc()
                n, d = n.scale(ONE / lead), d.scale(ONE / lead)
        var = n.var if n.degree > 0 else d.var
        object.__setattr__(self, "num", n.with_var(var))
        object.__setattr__(self, "den", d.with_var(var))

    def __setattr__(self, name, value):
        raise AttributeError("RatFn is immutable")

    @property
    def var(self) -> str:
        return self.num.var

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFn":
        return cls(p, Poly([1], p.var))

    def _coerce(self, other):
        if isinstance(other, RatFn):
            return other
        if isinstance(other, Poly):
            return RatFn(other)
        if _is_scalar(other):
            return RatFn(Poly([other], self.var))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RatFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RatFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n >= 0:
            return RatFn(self.num ** n, self.den ** n)
        return RatFn(self.den ** (-n), self.num ** (-n))

    def deriv(self) -> "RatFn":
        return RatFn(self.num.deriv() * self.den - self.num * self.den.deriv(), self.den * self.den)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(x) / d

    def eval_mp(self, x):
        return self.num.eval_mp(x) / self.den.eval_mp(x)

    def compose(self, inner) -> "RatFn":
        """Substitute a polynomial or rational function for the variable."""
        inner = inner if isinstance(inner, RatFn) else RatFn(inner)
        dn = max(self.num.degree, self.den.degree, 0)

        def hom(p: Poly) -> Poly:
            acc = Poly([], inner.var)
            for k, a in enumerate(p.coeffs):
                if a:
                    acc = acc + (inner.num ** k) * (inner.den ** (dn - k)) * a
            return acc

        return RatFn(hom(self.num), hom(self.den))

    def to_series(self, order: int, var: str | None = None) -> Series:
        v = var or self.var
        return Series(self.num.coeffs, order, v) / Series(self.den.coeffs, order, v)

    def compose_series(self, s: Series) -> Series:
        """self(s) for a series s; the denominator must not vanish at s(0)."""
        c0 = s.coeffs[0]
        num = _poly_at_series(self.num, s)
        den = _poly_at_series(self.den, s)
        if den.coeffs[0] == 0:
            raise ZeroDivisionError(f"pole at series constant term {rat_str(c0)}")
        return num / den

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num.coeffs == o.num.coeffs and self.den.coeffs == o.den.coeffs

    def __hash__(self):
        return hash((self.num.coeffs, self.den.coeffs))

    def __repr__(self):
        return f"RatFn(({self.num}) / ({self.den}))"


def _poly_at_series(p: Poly, s: Series) -> Series:
    acc = Series([], s.order, s.var)
    for a in reversed(p.coeffs):
        acc = acc * s + a
    return acc


def ratfn_normalize(num: Poly, den: Poly) -> RatFn:
    return RatFn(num, den)


# ---------------------------------------------------------------------------
# real root isolation
# ---------------------------------------------------------------------------

def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p.deriv()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        seq.append(-r)
    seq.pop()
    return seq


def sign_variations(seq: Sequence[Poly], x: Fraction) -> int:
    signs = [v for v in (q(x) for q in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_roots(p: Poly, lo: Scalar, hi: Scalar, seq: Sequence[Poly] | None = None) -> int:
    """Number of distinct real roots of p in the half-open interval (lo, hi]."""
    seq = seq or sturm_sequence(squarefree_part(p))
    return sign_variations(seq, as_rat(lo)) - sign_variations(seq, as_rat(hi))


@dataclass(frozen=True)
class IsolatedRoot:
    """A real root of ``poly`` known to be the only one in ``[lo, hi]``.

    ``lo == hi`` means the root is the exact rational ``lo``.
    """

    poly: Poly
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def refine(self, bits: int) -> "IsolatedRoot":
        """Bisect until the interval is narrower than 2**-bits."""
        p = self.poly
        lo, hi = self.lo, self.hi
        if lo == hi:
            return self
        target = Fraction(1, 2 ** bits)
        plo = p(lo)
        if plo == 0:
            return IsolatedRoot(p, lo, lo)
        phi = p(hi)
        if phi == 0:
            return IsolatedRoot(p, hi, hi)
        if (plo > 0) == (phi > 0):
            raise ArithmeticError("isolating interval does not bracket a sign change")
        while hi - lo > target:
            mid = (lo + hi) / 2
            pm = p(mid)
            if pm == 0:
                return IsolatedRoot(p, mid, mid)
            if (pm > 0) == (plo > 0):
                lo, plo = mid, pm
            else:
                hi = mid
        return IsolatedRoot(p, lo, hi)

    def value(self, bits: int = 64):
        """The root as an mpmath float with ``bits`` of working precision."""
        r = self.refine(bits + 2)
        mid = (r.lo + r.hi) / 2
        with mpmath.workprec(bits):
            return mpmath.mpf(mid.numerator) / mid.denominator

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi


def _root_bound(p: Poly) -> Fraction:
    lead = abs(p.lc())
    return 1 + max(abs(a) for a in p.coeffs[:-1]) / lead if p.degree > 0 else ONE


def sturm_isolate(p: Poly, lo: Scalar | None = None, hi: Scalar | None = None) -> list[IsolatedRoot]:
    """Isolate every distinct real root of p in the open interval (lo, hi).

    Endpoints default to a Cauchy bound.  The returned intervals are
    sorted and pairwise disjoint.  Each is either a single exact rational
    root or an interval with non-root endpoints across which p changes
    sign exactly once.
    """
    if p.is_zero():
        raise ValueError("cannot isolate the roots of the zero polynomial")
    q = squarefree_part(p)
    if q.degree <= 0:
        return []
    b = _root_bound(q)
    lo = -b if lo is None else as_rat(lo)
    hi = b if hi is None else as_rat(hi)
    if lo >= hi:
        return []
    seq = sturm_sequence(q)
    out: list[IsolatedRoot] = []

    def rec(a: Fraction, c: Fraction, n: int):
        # exactly n roots in the open interval (a, c)
        if n == 0:
            return
        if n == 1 and q(a) != 0 and q(c) != 0:
            out.append(IsolatedRoot(q, a, c))
            return
        m = (a + c) / 2
        at_m = 1 if q(m) == 0 else 0
        left = sign_variations(seq, a) - sign_variations(seq, m) - at_m
        if at_m:
            out.append(IsolatedRoot(q, m, m))
        rec(a, m, left)
        rec(m, c, n - left - at_m)

    total = sign_variations(seq, lo) - sign_variations(seq, hi) - (1 if q(hi) == 0 else 0)
    rec(lo, hi, total)
    return sorted(out, key=lambda r: r.lo)
