"""Exact scalars: rationals and Gaussian rationals.

Rationals are ``gmpy2.mpq`` when gmpy2 is importable and
``fractions.Fraction`` otherwise.  A Gaussian rational with zero imaginary
part is always collapsed to a plain rational, so real computations never pay
for the complex wrapper.
"""

from __future__ import annotations

import math
import numbers
import re

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as QQ

__all__ = [
    "QQ",
    "GaussianRational",
    "gauss",
    "to_scalar",
    "is_scalar",
    "conj",
    "real_part",
    "imag_part",
    "modulus_bounds",
    "modulus_upper",
    "sqrt_bounds",
    "format_scalar",
    "parse_scalar",
]

_RATIONAL_TYPES = (int, numbers.Rational)


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with exact rational parts.

    Arithmetic results are canonicalized through :func:`gauss`, so a result
    whose imaginary part cancels comes back as a plain rational.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = QQ(re)
        self.im = QQ(im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, _RATIONAL_TYPES):
            return not self.im and self.re == other
        return NotImplemented

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return gauss(self.re + other.re, self.im + other.im)
        if isinstance(other, _RATIONAL_TYPES):
            return gauss(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return gauss(self.re - other.re, self.im - other.im)
        if isinstance(other, _RATIONAL_TYPES):
            return gauss(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            return gauss(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return gauss(a * c - b * d, a * d + b * c)
        if isinstance(other, _RATIONAL_TYPES):
            return gauss(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def _inverse(self):
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("division by zero scalar")
        return gauss(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            return self * other._inverse()
        if isinstance(other, _RATIONAL_TYPES):
            if not other:
                raise ZeroDivisionError("division by zero scalar")
            return gauss(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            return self._inverse() * other
        return NotImplemented

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return (1 / self) ** (-e)
        result, base = QQ(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __complex__(self):
        return complex(float(self.re), float(self.im))


def gauss(re, im=0):
    """Canonical scalar for ``re + im*i``: a rational when ``im == 0``."""
    if not im:
        return QQ(re)
    return GaussianRational(re, im)


def is_scalar(value) -> bool:
    return isinstance(value, (GaussianRational,) + _RATIONAL_TYPES)


def to_scalar(value):
    """Coerce ints, rationals, Gaussian rationals and scalar strings."""
    if isinstance(value, GaussianRational):
        return gauss(value.re, value.im)
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, _RATIONAL_TYPES):
        return QQ(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def real_part(c):
    return c.re if isinstance(c, GaussianRational) else c


def imag_part(c):
    return c.im if isinstance(c, GaussianRational) else QQ(0)


def conj(c):
    if isinstance(c, GaussianRational):
        return gauss(c.re, -c.im)
    return c


def sqrt_bounds(x, bits: int = 128):
    """Rational ``(lo, hi)`` with ``lo <= sqrt(x) <= hi``, exact for squares."""
    x = QQ(x)
    if x < 0:
        raise ValueError("square root of a negative rational")
    num, den = int(x.numerator), int(x.denominator)
    scale = 1 << bits
    # sqrt(num/den) = sqrt(num*den)/den
    radicand = num * den * scale * scale
    root = math.isqrt(radicand)
    lo = QQ(root, den * scale)
    hi = lo if root * root == radicand else QQ(root + 1, den * scale)
    return lo, hi


def modulus_bounds(c, bits: int = 128):
    """Rational bounds on ``|c|``; a point interval for rationals."""
    if isinstance(c, GaussianRational):
        return sqrt_bounds(c.re * c.re + c.im * c.im, bits)
    a = abs(QQ(c))
    return a, a


def modulus_upper(c, bits: int = 128):
    return modulus_bounds(c, bits)[1]


def _format_rational(q) -> str:
    q = QQ(q)
    if q.denominator == 1:
        return str(int(q.numerator))
    return f"{int(q.numerator)}/{int(q.denominator)}"


def format_scalar(c) -> str:
    """Textual form ``a/b`` or ``a/b+c/d*i``; zero parts are omitted."""
    re_, im_ = real_part(c), imag_part(c)
    if not im_:
        return _format_rational(re_)
    if im_ == 1:
        imag = "i"
    elif im_ == -1:
        imag = "-i"
    else:
        imag = _format_rational(im_) + "*i"
    if not re_:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return _format_rational(re_) + sign + imag


_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^\s*(?P<re>{_RAT})?\s*(?:(?P<im>[+-]\s*(?:\d+(?:/\d+)?\s*\*\s*)?i|{_RAT}\s*\*\s*i|[+-]?i))?\s*$"
)


def parse_scalar(text: str):
    """Inverse of :func:`format_scalar`."""
    m = _SCALAR_RE.match(text)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"malformed scalar {text!r}")
    re_ = QQ(m.group("re")) if m.group("re") else QQ(0)
    im_ = QQ(0)
    if m.group("im"):
        body = m.group("im").replace(" ", "")
        sign = -1 if body.startswith("-") else 1
        body = body.lstrip("+-")
        if body == "i":
            im_ = QQ(sign)
        else:
            im_ = sign * QQ(body[: -len("*i")])
    return gauss(re_, im_)
