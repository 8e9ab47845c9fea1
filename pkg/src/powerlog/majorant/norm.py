"""The weighted norm ``||f||_r = sum_{i>=p} |f_i| r**(-i)`` at ``t = infinity``.

Polynomials with rational coefficients have exact norms.  A rational
function gets an interval: an exact partial sum of its Laurent expansion
plus a certified geometric bound on the tail.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..exact import QQ, Poly, RatFunc, to_scalar
from ..exact.scalars import modulus_bounds, modulus_upper

__all__ = ["Interval", "norm", "poly_norm", "pole_modulus_bound", "NormError", "DEFAULT_TOL"]

DEFAULT_TOL = QQ(1, 2 ** 64)


class NormError(ValueError):
    """The norm does not exist for this radius."""


@dataclass(frozen=True)
class Interval:
    lo: object
    hi: object

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def _abs_bounds(c, bits):
    if hasattr(c, "denominator"):
        a = abs(QQ(c))
        return a, a
    return modulus_bounds(c, bits)


def poly_norm(p: Poly, r, bits: int = 128) -> Interval:
    """``sum |c_d| r**d``; a point interval for rational coefficients."""
    r = to_scalar(r)
    lo = hi = QQ(0)
    rp = QQ(1)
    for c in p.coeffs:
        if c:
            a, b = _abs_bounds(c, bits)
            lo += a * rp
            hi += b * rp
        rp *= r
    return Interval(lo, hi)


def pole_modulus_bound(den: Poly, rel=QQ(1, 2 ** 24)):
    """Rational ``rho`` at or above the positive root of ``|lc| t**D - sum_{i<D} |d_i| t**i``.

    Every root of ``den`` has modulus at most ``rho``, and the Laurent
    coefficients of ``1/den`` at infinity are dominated by a multiple of
    ``rho**j``.  Returns 0 for a monomial denominator.
    """
    if not den.coeffs:
        raise ZeroDivisionError("zero denominator")
    D = den.degree
    if D == 0 or den.is_monomial():
        return QQ(0)
    lc_lo = modulus_bounds(den.lc)[0] if not hasattr(den.lc, "denominator") else abs(QQ(den.lc))
    ups = [modulus_upper(c) if c else QQ(0) for c in den.coeffs[:-1]]

    def cauchy(x):
        return lc_lo * x ** D - sum(u * x ** i for i, u in enumerate(ups))

    lo, hi = QQ(0), 1 + max(ups) / lc_lo
    while cauchy(hi) < 0:  # guard; the Cauchy bound should already be above the root
        hi *= 2
    while hi - lo > rel * hi:
        mid = (lo + hi) / 2
        if cauchy(mid) >= 0:
            hi = mid
        else:
            lo = mid
    return hi


def norm(f, r, tol=DEFAULT_TOL, bits: int = 128) -> Interval:
    """Interval enclosing ``||f||_r`` with width at most ``tol``.

    Raises :class:`NormError` ("r too small for operand") when the pole
    modulus bound of ``f`` is not below ``r``.
    """
    r = to_scalar(r)
    if isinstance(f, Poly):
        return poly_norm(f, r, bits)
    if not isinstance(f, RatFunc):
        f = RatFunc.const(f)
    if not f:
        return Interval(QQ(0), QQ(0))
    num, den = f.num, f.den
    if den.is_one():
        return poly_norm(num, r, bits)
    if den.is_monomial():
        # num / (c t**D) is a finite Laurent polynomial
        D = den.degree
        inv = 1 / den.lc
        lo = hi = QQ(0)
        for i, c in enumerate(num.coeffs):
            if c:
                a, b = _abs_bounds(c * inv, bits)
                w = r ** (i - D) if i >= D else 1 / r ** (D - i)
                lo += a * w
                hi += b * w
        return Interval(lo, hi)

    rho = pole_modulus_bound(den)
    if rho >= r:
        raise NormError("r too small for operand")
    p = den.degree - num.degree
    nrev = num.reverse().coeffs
    drev = den.reverse().coeffs
    D = len(drev) - 1

    # majorant h of 1/drev: h_0 = 1/|d_0|, h_j = sum_i w_i h_{j-i}
    d0_lo = _abs_bounds(drev[0], bits)[0]
    w = [None] + [_abs_bounds(c, bits)[1] / d0_lo if c else QQ(0) for c in drev[1:]]
    h = [1 / d0_lo]
    for j in range(1, D):
        h.append(sum(w[i] * h[j - i] for i in range(1, j + 1)))
    # h_j <= B rho**j for all j: true on the first D terms by the choice of B,
    # and propagated by the recurrence because sum_i w_i rho**(-i) <= 1
    B = max(hj / rho ** j for j, hj in enumerate(h))
    nabs = [_abs_bounds(c, bits)[1] for c in nrev]
    Bp = B * sum(a / rho ** i for i, a in enumerate(nabs))
    q = rho / r

    # exact Laurent terms g_j of nrev/drev
    inv0 = 1 / drev[0]
    g = []
    lo = hi = QQ(0)
    scale = r ** (-p) if p <= 0 else 1 / r ** p
    j = 0
    rj = QQ(1)
    while True:
        acc = nrev[j] if j < len(nrev) else QQ(0)
        for i in range(1, min(j, D) + 1):
            if drev[i]:
                acc -= drev[i] * g[j - i]
        c = acc * inv0
        g.append(c)
        if c:
            a, b = _abs_bounds(c, bits)
            lo += a * scale / rj
            hi += b * scale / rj
        j += 1
        rj *= r
        # tail sum_{i >= j} Bp rho**i r**-i
        tail = scale * Bp * q ** j / (1 - q)
        if hi + tail - lo <= tol or j > 4096:
            return Interval(lo, hi + tail)
