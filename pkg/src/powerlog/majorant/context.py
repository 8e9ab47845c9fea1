"""Radius choice and the explicit constants of the norm estimates."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import ceil, comb

from ..exact import QQ, Poly, RatFunc
from ..exact.poly import cauchy_bound
from .norm import DEFAULT_TOL, NormError, norm, pole_modulus_bound

__all__ = [
    "NormContext", "choose_r", "compute_constants", "rebase_operator", "rebase_monomials",
    "D_op", "calD", "calL", "q_power_exponent",
]


@dataclass(frozen=True)
class NormContext:
    """Radius ``r``, the polynomial ``Q`` and the derived constants.

    Constants are exact rationals; interval norms enter through their upper
    ends except where a lower end is the safe direction (noted in ``notes``).
    """

    r: object
    Q: Poly
    n: int
    c1: int
    c2: object = None
    c3: object = None
    c2t: object = None
    c3t: object = None
    A: object = None
    sigma: object = None
    ctilde: object = None
    alpha: object = None
    k0: int | None = None
    alphas: tuple = ()
    A_by_k: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def s(v):
            return None if v is None else str(v)

        return {
            "r": s(self.r), "Q": str(self.Q), "n": self.n, "c1": self.c1,
            "c2": s(self.c2), "c3": s(self.c3), "c2_tilde": s(self.c2t), "c3_tilde": s(self.c3t),
            "A": s(self.A), "sigma": s(self.sigma), "c_tilde": s(self.ctilde), "alpha": s(self.alpha),
            "k0": self.k0,
        }


# -- operators -------------------------------------------------------------
def D_op(P: Poly, k: int, m: int, Q: Poly) -> Poly:
    """``D_{k,m}(P) = (k Q - m Q') P + Q P'``."""
    return (Q * k - Q.derivative() * m) * P + Q * P.derivative()


def calD(P: Poly, k: int, j: int, Q: Poly) -> Poly:
    """``D_{k,k+j-1} o ... o D_{k,k}``; the identity for ``j = 0``."""
    for i in range(j):
        P = D_op(P, k, k + i, Q)
    return P


def calL(P: Poly, k: int, a, Q: Poly) -> RatFunc:
    """``sum_j a_j Q**(n-j) calD_{k,j}(P)`` for the rebased coefficients ``a``."""
    n = len(a) - 1
    total = RatFunc.const(0)
    cur = P
    for j, aj in enumerate(a):
        if j:
            cur = D_op(cur, k, k + j - 1, Q)
        if aj:
            total = total + aj * RatFunc.from_poly(Q ** (n - j) * cur)
    return total


# -- rebasing from (delta + l)**j to delta**j -----------------------------------
def rebase_operator(a, ell: int) -> tuple:
    """Coefficients of ``sum_j a_j (delta+l)**j`` in powers of ``delta``."""
    n = len(a) - 1
    out = []
    for i in range(n + 1):
        s = RatFunc.const(0)
        for j in range(i, n + 1):
            if a[j]:
                s = s + a[j].scale(comb(j, i) * ell ** (j - i))
        out.append(s)
    return tuple(out)


def rebase_monomials(monomials: dict, n: int, ell: int) -> dict:
    """Rewrite ``M`` in ``V_i = delta**i u`` using ``U_j = sum_i C(j,i) l**(j-i) V_i``."""
    nv = n + 1
    lin = []
    for j in range(nv):
        lin.append({i: comb(j, i) * ell ** (j - i) for i in range(j + 1) if comb(j, i) * ell ** (j - i)})

    def mul(p1, p2):
        out = {}
        for q1, c1 in p1.items():
            for q2, c2 in p2.items():
                q = tuple(a + b for a, b in zip(q1, q2))
                out[q] = out.get(q, 0) + c1 * c2
        return {q: c for q, c in out.items() if c}

    cache = {}

    def power(j, e):
        key = (j, e)
        if key not in cache:
            if e == 0:
                cache[key] = {(0,) * nv: 1}
            else:
                base = {}
                for i, c in lin[j].items():
                    q = [0] * nv
                    q[i] = 1
                    base[tuple(q)] = c
                cache[key] = mul(power(j, e - 1), base)
        return cache[key]

    out: dict = {}
    for (mu, q), b in monomials.items():
        poly = {(0,) * nv: 1}
        for j, e in enumerate(q):
            if e:
                poly = mul(poly, power(j, e))
        for qv, c in poly.items():
            key = (mu, qv)
            v = out.get(key)
            v = b.scale(c) if v is None else v + b.scale(c)
            out[key] = v
    return {k: v for k, v in out.items() if v}


def q_power_exponent(den: Poly, q: Poly) -> int:
    """Smallest ``e`` with ``den | q**e``."""
    if den.is_one():
        return 0
    e, qe = 0, Poly.const(1)
    while e <= den.degree:
        if den.divides(qe):
            return e
        e += 1
        qe = qe * q
    raise ValueError(f"{den} has roots outside {q}")


# -- radius ------------------------------------------------------------------
def _bullets(r, Q: Poly, n: int, c1: int, extra) -> bool:
    if r < 1:
        return False
    if c1 + (n - 1) * max(Q.degree, 0) > r / 4:
        return False
    for f in extra:
        if f and not f.den.is_one() and pole_modulus_bound(f.den) >= r:
            return False
    if Q.is_one():
        return True
    try:
        if max(n, 1) * norm(RatFunc(Q.derivative(), Q), r).hi > QQ(1, 2):
            return False
        if norm(RatFunc(Poly.const(1), Q), r).hi >= 1:
            return False
    except NormError:
        return False
    return norm(Q ** (n + 1), r).lo > 1


def choose_r(Q: Poly, n: int, c1: int, extra=()) -> NormContext:
    """Smallest power of two satisfying every condition on the radius.

    The search starts at the power of two at or above ``2 * cauchy_bound(Q)``
    (at least 2) and doubles.  ``extra`` lists further rational functions
    whose poles must lie inside ``|t| < r``.
    """
    Q = Q.monic()
    r = QQ(2)
    if not Q.is_constant():
        b = 2 * cauchy_bound(Q)
        while r < b:
            r *= 2
    while not _bullets(r, Q, n, c1, extra):
        r *= 2
    return NormContext(r=r, Q=Q, n=n, c1=c1)


# -- constants ---------------------------------------------------------------
def compute_constants(ctx: NormContext, a_rebased, samples=(), tol=DEFAULT_TOL) -> NormContext:
    """Fill in ``c2, c3, c2~, c3~, A, sigma, c~``.

    ``a_rebased`` are the ``delta``-power coefficients with ``a_n = 1``.
    ``samples`` is a sequence of ``(k, P_k)``; for ``k`` below the threshold
    ``k0`` where the general estimate kicks in, ``A`` is taken large enough
    for these polynomials.
    """
    r, Q, n, c1 = ctx.r, ctx.Q, ctx.n, ctx.c1
    if a_rebased[-1] != 1:
        raise ValueError("leading coefficient must be normalized to 1")
    for f in a_rebased:
        if f and not f.den.is_one() and pole_modulus_bound(f.den) >= r:
            raise NormError("r too small for operand")
    nQ = norm(Q, r).hi
    c2 = max(nQ, norm(Q.derivative(), r).hi)
    c3 = 4 * norm(RatFunc(Poly.const(1), Q), r, tol).hi
    K = (2 + c1 + (n - 1) * (1 + max(Q.degree, 0))) * c2
    c2t = max(QQ(1), K ** n)
    c3t = max(QQ(1), c3 ** n)
    alphas = []
    for i in range(1, n + 1):
        f = a_rebased[n - i] * RatFunc.from_poly(Q ** i)
        alphas.append(norm(f, r, tol).hi * c3t)

    def small(k):
        return sum(al / QQ(k) ** i for i, al in enumerate(alphas, start=1)) <= QQ(1, 2)

    # the sum decreases in k and is at most sum(alphas)/k, so bisect on [1, 2 sum]
    lo, hi = 1, max(1, ceil(2 * sum(alphas, QQ(0))))
    while lo < hi:
        mid = (lo + hi) // 2
        if small(mid):
            hi = mid
        else:
            lo = mid + 1
    k0 = int(lo)
    A = QQ(2)
    A_by_k = {}
    for k, P in samples:
        if k >= k0 or not P:
            continue
        Lk = calL(P, k, a_rebased, Q)
        if not Lk:
            continue
        Ak = norm(calD(P, k, n, Q), r, tol).hi / norm(Lk, r, tol).lo
        A_by_k[k] = Ak
        A = max(A, Ak)
    sigma = 1 / (c3t * A)
    ctilde = norm(Q ** (n + 1), r).lo
    notes = {
        "A": "max(2, small-k ratios on the computed coefficients)" if A_by_k else "2",
        "c_tilde": "lower end of the norm interval (safe direction for the certificate)",
    }
    return replace(ctx, c2=c2, c3=c3, c2t=c2t, c3t=c3t, A=A, sigma=sigma, ctilde=ctilde,
                   alpha=ctilde * nQ, k0=k0, alphas=tuple(alphas), A_by_k=A_by_k, notes=notes)
