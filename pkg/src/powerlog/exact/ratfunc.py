"""Reduced rational functions in ``t`` over Q(i)."""

from __future__ import annotations

from .poly import Poly, format_poly, poly_gcd
from .scalars import QQ, GaussianRational, to_scalar

__all__ = ["RatFunc", "ratfunc_normalize", "laurent_at_infinity"]

_ONE = Poly.const(1)


class RatFunc:
    """``num/den`` with ``gcd(num, den) = 1`` and ``den`` monic.

    Equality is equality of canonical forms.  Use :func:`ratfunc_normalize`
    or the arithmetic operators to build instances; the constructor
    canonicalizes its arguments.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if den is None:
            den = _ONE
        elif not isinstance(den, Poly):
            den = Poly.const(den)
        self.num, self.den = _canonical(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFunc":
        f = object.__new__(cls)
        f.num, f.den, f._hash = num, den, None
        return f

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls._raw(p, _ONE)

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls._raw(Poly.const(c), _ONE)

    @classmethod
    def t(cls) -> "RatFunc":
        return cls._raw(Poly.t(), _ONE)

    # -- queries -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num.coeffs

    def __bool__(self):
        return bool(self.num.coeffs)

    def is_poly(self) -> bool:
        return self.den.is_one()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def degree_at_infinity(self) -> int:
        """``-ord_inf f = deg num - deg den``; raises for the zero function."""
        if not self.num.coeffs:
            raise ValueError("degree at infinity of the zero function")
        return self.num.degree - self.den.degree

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, Poly):
            return self.den.is_one() and self.num == other
        if isinstance(other, (int, GaussianRational)) or hasattr(other, "denominator"):
            return self.den.is_one() and self.num == Poly.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("RatFunc", self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        return format_ratfunc(self)

    # -- arithmetic ----------------------------------------------------
    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.num.coeffs:
            return other
        if not other.num.coeffs:
            return self
        d1, d2 = self.den, other.den
        if d1.is_one() and d2.is_one():
            return RatFunc._raw(self.num + other.num, _ONE)
        if d1 == d2:
            return _reduced(self.num + other.num, d1)
        g = poly_gcd(d1, d2)
        if g.is_one():
            num = self.num * d2 + other.num * d1
            return RatFunc._raw(num, d1 * d2) if num.coeffs else _ZERO
        d1g, d2g = d1.exact_div(g), d2.exact_div(g)
        num = self.num * d2g + other.num * d1g
        if not num.coeffs:
            return _ZERO
        # common factors of num and d1*d2g can only come from g
        h = poly_gcd(num, g)
        den = d1 * d2g
        if not h.is_one():
            num, den = num.exact_div(h), den.exact_div(h)
        return RatFunc._raw(num, den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.num.coeffs or not other.num.coeffs:
            return _ZERO
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if d1.is_one() and d2.is_one():
            return RatFunc._raw(n1 * n2, _ONE)
        g1 = poly_gcd(n1, d2) if not d2.is_one() else _ONE
        g2 = poly_gcd(n2, d1) if not d1.is_one() else _ONE
        if not g1.is_one():
            n1, d2 = n1.exact_div(g1), d2.exact_div(g1)
        if not g2.is_one():
            n2, d1 = n2.exact_div(g2), d1.exact_div(g2)
        return RatFunc._raw(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num.coeffs:
            raise ZeroDivisionError("division by zero rational function")
        lc = self.num.lc
        return RatFunc._raw(self.den * (1 / lc), self.num * (1 / lc))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc._raw(self.num ** e, self.den ** e)

    def scale(self, c) -> "RatFunc":
        c = to_scalar(c)
        if not c:
            return _ZERO
        return RatFunc._raw(self.num * c, self.den)

    def derivative(self) -> "RatFunc":
        n, d = self.num, self.den
        if d.is_one():
            return RatFunc._raw(n.derivative(), _ONE)
        return _reduced(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, x):
        return self.num(x) / self.den(x)


def _canonical(num: Poly, den: Poly):
    if not den.coeffs:
        raise ZeroDivisionError("division by zero polynomial")
    if not num.coeffs:
        return num, _ONE
    g = poly_gcd(num, den)
    if not g.is_one():
        num, den = num.exact_div(g), den.exact_div(g)
    lc = den.lc
    if lc != 1:
        inv = 1 / lc
        num, den = num * inv, den * inv
    return num, den


def _reduced(num: Poly, den: Poly) -> RatFunc:
    n, d = _canonical(num, den)
    return RatFunc._raw(n, d)


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc._raw(x, _ONE)
    try:
        return RatFunc._raw(Poly.const(to_scalar(x)), _ONE)
    except TypeError:
        return NotImplemented


_ZERO = RatFunc._raw(Poly(), _ONE)


def ratfunc_normalize(num: Poly, den: Poly) -> RatFunc:
    """Canonical reduced form of ``num/den``."""
    if not den.coeffs:
        raise ZeroDivisionError("division by zero polynomial")
    return RatFunc(num, den)


def format_ratfunc(f: RatFunc, var: str = "t") -> str:
    num = format_poly(f.num, var)
    if f.den.is_one():
        return num
    den = format_poly(f.den, var)
    if _needs_parens(f.num):
        num = f"({num})"
    if _needs_parens(f.den):
        den = f"({den})"
    return f"{num}/{den}"


def _needs_parens(p: Poly) -> bool:
    nonzero = [c for c in p.coeffs if c]
    if len(nonzero) != 1:
        return True
    # a lone term still needs parentheses when it carries a product or a fraction
    if isinstance(p.lc, GaussianRational):
        return True
    if p.degree > 0:
        return p.lc != 1
    return p.lc.denominator != 1


def laurent_at_infinity(f: RatFunc, terms: int):
    """First ``terms`` pairs ``(i, f_i)`` of ``f = sum_{i >= p} f_i t**(-i)``.

    ``p = deg den - deg num``.  Zero coefficients are included so that the
    exponents are consecutive.
    """
    if not f.num.coeffs:
        raise ValueError("Laurent expansion of the zero function")
    if terms < 1:
        raise ValueError("terms must be positive")
    n, d = f.num, f.den
    p = d.degree - n.degree
    # in s = 1/t: f = s**p * nrev(s) / drev(s)
    nrev, drev = n.reverse().coeffs, d.reverse().coeffs
    inv0 = 1 / drev[0]
    out = []
    series = []
    for j in range(terms):
        acc = nrev[j] if j < len(nrev) else QQ(0)
        for i in range(1, min(j, len(drev) - 1) + 1):
            if drev[i]:
                acc -= drev[i] * series[j - i]
        c = acc * inv0
        series.append(c)
        out.append((p + j, c))
    return out
