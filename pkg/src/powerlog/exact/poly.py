"""Dense univariate polynomials over Q(i)."""

from __future__ import annotations

from math import lcm

from .scalars import QQ, GaussianRational, format_scalar, modulus_bounds, modulus_upper, to_scalar

__all__ = ["Poly", "poly_gcd", "squarefree_part", "integer_roots", "rational_roots"]


def _strip(coeffs):
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """Polynomial in ``t`` stored as a tuple of coefficients by degree.

    The zero polynomial has an empty coefficient tuple and degree ``-1``.
    Instances are immutable and hashable.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        self.coeffs = _strip([to_scalar(c) for c in coeffs])
        self._hash = None

    @classmethod
    def _raw(cls, coeffs):
        # coeffs already canonical scalars; strips trailing zeros
        p = object.__new__(cls)
        p.coeffs = _strip(coeffs) if coeffs and not coeffs[-1] else tuple(coeffs)
        p._hash = None
        return p

    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=1):
        return cls._raw([QQ(0)] * degree + [to_scalar(c)])

    @classmethod
    def t(cls):
        return cls.monomial(1)

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    def is_monomial(self) -> bool:
        return bool(self.coeffs) and all(not c for c in self.coeffs[:-1])

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else QQ(0)

    def low_order(self) -> int:
        """Multiplicity of the root ``t = 0`` (``-1`` for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return QQ(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, GaussianRational)) or hasattr(other, "denominator"):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("Poly", self.coeffs))
        return self._hash

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)

    # -- arithmetic ----------------------------------------------------
    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(_strip(out))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = to_scalar(other)
            if not c:
                return Poly._raw(())
            return Poly._raw([c * x for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(())
        if len(b) == 1:
            c = b[0]
            return Poly._raw([c * x for x in a])
        if len(a) == 1:
            c = a[0]
            return Poly._raw([c * x for x in b])
        out = [QQ(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
        return Poly._raw(_strip(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.const(1), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k: int) -> "Poly":
        """Multiply by ``t**k``."""
        if not self.coeffs or k == 0:
            return self
        return Poly._raw([QQ(0)] * k + list(self.coeffs))

    def divmod(self, other: "Poly"):
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) <= db:
            return Poly._raw(()), self
        inv_lc = 1 / other.lc
        quo = [QQ(0)] * (len(rem) - db)
        bc = other.coeffs
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if not c:
                continue
            q = c * inv_lc
            quo[i - db] = q
            base = i - db
            for j in range(db):
                if bc[j]:
                    rem[base + j] -= q * bc[j]
            rem[i] = QQ(0)
        return Poly._raw(_strip(quo)), Poly._raw(_strip(rem[:db]))

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises if the remainder is nonzero."""
        if other.is_monomial():
            k = other.degree
            lo = self.low_order()
            if self.coeffs and lo < k:
                raise ArithmeticError("inexact polynomial division")
            inv = 1 / other.lc
            return Poly._raw([c * inv for c in self.coeffs[k:]])
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: "Poly") -> bool:
        """True when ``self`` divides ``other``."""
        if not self.coeffs:
            return not other.coeffs
        return not (other % self).coeffs

    def monic(self) -> "Poly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        inv = 1 / self.coeffs[-1]
        return Poly._raw([c * inv for c in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly._raw([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reverse(self, degree: int | None = None) -> "Poly":
        """``t**degree * p(1/t)`` with ``degree`` defaulting to ``deg p``."""
        d = self.degree if degree is None else degree
        out = [QQ(0)] * (d + 1)
        for i, c in enumerate(self.coeffs):
            out[d - i] = c
        return Poly._raw(_strip(out))

    def map_coeffs(self, f) -> "Poly":
        return Poly([f(c) for c in self.coeffs])

    def is_real(self) -> bool:
        return not any(isinstance(c, GaussianRational) for c in self.coeffs)


def format_poly(p: Poly, var: str = "t") -> str:
    """``c0 + c1*t + c2*t^2`` with explicit ``*`` and ``^``."""
    if not p.coeffs:
        return "0"
    parts = []
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        parts.append(_format_term(c, var, i))
    return _join_terms(parts)


def _format_term(c, var, power):
    mono = "" if power == 0 else (var if power == 1 else f"{var}^{power}")
    if isinstance(c, GaussianRational):
        s = format_scalar(c)
        if not mono:
            return s
        return f"({s})*{mono}"
    if not mono:
        return format_scalar(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{format_scalar(c)}*{mono}"


def _join_terms(parts):
    out = parts[0]
    for s in parts[1:]:
        if s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    if not a.coeffs and not b.coeffs:
        raise ValueError("gcd of two zero polynomials is undefined")
    if not a.coeffs:
        return b.monic()
    if not b.coeffs:
        return a.monic()
    if a.is_constant() or b.is_constant():
        return Poly.const(1)
    if a.is_monomial():
        return Poly.monomial(min(a.degree, b.low_order()))
    if b.is_monomial():
        return Poly.monomial(min(b.degree, a.low_order()))
    # pull out the common power of t first; it keeps the Euclidean loop short
    k = min(a.low_order(), b.low_order())
    if k:
        a = Poly._raw(a.coeffs[k:])
        b = Poly._raw(b.coeffs[k:])
    if a.degree < b.degree:
        a, b = b, a
    a, b = a.monic(), b.monic()
    while b.coeffs:
        if b.is_constant():
            a = Poly.const(1)
            break
        a, b = b, (a % b).monic()
    return a.monic().shift(k)


def squarefree_part(p: Poly) -> Poly:
    """Monic product of the distinct irreducible factors of ``p``."""
    if not p.coeffs:
        raise ValueError("squarefree part of the zero polynomial")
    if p.is_constant():
        return Poly.const(1)
    g = poly_gcd(p, p.derivative())
    return p.exact_div(g).monic()


def cauchy_bound(p: Poly):
    """Rational upper bound ``1 + max |c_i / c_deg|`` on the root moduli."""
    if not p.coeffs:
        raise ValueError("root bound of the zero polynomial")
    if p.is_constant():
        return QQ(0)
    lc_lo = modulus_bounds(p.lc)[0]
    m = max((modulus_upper(c) for c in p.coeffs[:-1]), default=QQ(0))
    return 1 + m / lc_lo


def integer_roots(p: Poly) -> set[int]:
    """All integer roots, found by testing every integer inside the Cauchy bound."""
    if not p.coeffs:
        raise ValueError("integer roots of the zero polynomial")
    if p.is_constant():
        return set()
    bound = int(cauchy_bound(p))
    return {k for k in range(-bound, bound + 1) if not p(k)}


def _divisors(n: int):
    n = abs(n)
    out = set()
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.add(i)
            out.add(n // i)
        i += 1
    return out


def rational_roots(p: Poly) -> list:
    """Distinct rational roots of a polynomial with rational coefficients."""
    if not p.coeffs:
        raise ValueError("roots of the zero polynomial")
    if not p.is_real():
        raise ValueError("rational root search needs rational coefficients")
    roots = []
    k = p.low_order()
    if k > 0:
        roots.append(QQ(0))
        p = Poly._raw(p.coeffs[k:])
    if p.is_constant():
        return roots
    den = 1
    for c in p.coeffs:
        den = lcm(den, int(QQ(c).denominator))
    ints = [int(QQ(c) * den) for c in p.coeffs]
    for a in sorted(_divisors(ints[0])):
        for b in sorted(_divisors(ints[-1])):
            for s in (1, -1):
                r = QQ(s * a, b)
                if r not in roots and not p(r):
                    roots.append(r)
    return sorted(roots)
