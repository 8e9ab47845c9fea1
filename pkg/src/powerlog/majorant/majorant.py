"""The majorant equation ``sigma U = x Mt(x, t, U)`` and the coefficient certificate."""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil

from ..exact import QQ, Poly, RatFunc
from ..exact.scalars import modulus_upper
from .context import (
    NormContext, calL, choose_r, compute_constants, q_power_exponent, rebase_monomials, rebase_operator,
)
from .norm import DEFAULT_TOL, norm, poly_norm

__all__ = [
    "MajorantRun", "Verdict", "Certification", "build_majorant", "majorant_recursion", "certify",
    "certify_expansion",
]


@dataclass
class MajorantRun:
    """Merged majorant monomials ``(weight, mu, nu, s)`` meaning ``weight x**mu t**nu U**s``."""

    monomials: tuple
    Ptilde: tuple = ()
    certs: tuple = ()


@dataclass(frozen=True)
class Verdict:
    k: int
    lhs_hi: object
    rhs_lo: object
    passed: bool

    def to_json(self) -> dict:
        return {"k": self.k, "lhs_hi": str(self.lhs_hi), "rhs_lo": str(self.rhs_lo), "pass": self.passed}


def build_majorant(monomials: dict, ctx: NormContext, bits: int = 128) -> MajorantRun:
    """Replace each ``alpha x**mu t**nu / Q * prod V_j**q_j`` by ``|alpha| x**mu t**nu U**sum(q)``.

    ``monomials`` maps ``(mu, q)`` to ``b(t)`` in the ``delta``-power basis.
    ``|alpha|`` is a rational upper bound when ``alpha`` is not real.
    """
    Q = RatFunc.from_poly(ctx.Q)
    merged: dict = {}
    for (mu, q), b in monomials.items():
        num = b * Q
        if not num.is_poly():
            raise ValueError(f"denominator of {b} does not divide Q")
        s = sum(q)
        for nu, c in enumerate(num.num.coeffs):
            if c:
                w = abs(QQ(c)) if hasattr(c, "denominator") else modulus_upper(c, bits)
                key = (mu, nu, s)
                merged[key] = merged.get(key, QQ(0)) + w
    mons = tuple(sorted((w, mu, nu, s) for (mu, nu, s), w in merged.items()))
    return MajorantRun(mons)


def majorant_recursion(run: MajorantRun, ctx: NormContext, N: int) -> tuple:
    """``Pt_1, ..., Pt_N``: ``Pt_k = (1/sigma) sum w t**nu [x**(k-1-mu)] U**s``."""
    inv_sigma = 1 / QQ(ctx.sigma)
    by_key: dict = {}
    for w, mu, nu, s in run.monomials:
        by_key.setdefault((mu, s), Poly())
        by_key[(mu, s)] = by_key[(mu, s)] + Poly.monomial(nu, w)
    P: list[Poly] = []
    pw: dict = {}  # (s, i) -> [x**i] U**s

    def power(s, i):
        if s == 0:
            return Poly.const(1) if i == 0 else Poly()
        if i < s:
            return Poly()
        if s == 1:
            return P[i - 1]
        key = (s, i)
        v = pw.get(key)
        if v is None:
            v = Poly()
            for j in range(1, i - (s - 1) + 1):
                v = v + P[j - 1] * power(s - 1, i - j)
            pw[key] = v
        return v

    for k in range(1, N + 1):
        acc = Poly()
        for (mu, s), tpoly in by_key.items():
            i = k - 1 - mu
            if i < 0 or i < s:
                continue
            c = power(s, i)
            if c:
                acc = acc + tpoly * c
        P.append(acc * inv_sigma)
    run.Ptilde = tuple(P)
    return run.Ptilde


def certify(coeffs, run: MajorantRun, ctx: NormContext, tol=DEFAULT_TOL) -> tuple:
    """Check ``||P_k / Q**k|| <= c~**k ||Pt_k||`` for each given ``R_{l+k} = P_k / Q**k``."""
    out = []
    for k, R in enumerate(coeffs, start=1):
        if k > len(run.Ptilde):
            raise ValueError(f"majorant coefficient {k} has not been computed")
        rhs = QQ(ctx.ctilde) ** k * poly_norm(run.Ptilde[k - 1], ctx.r).lo
        if not R:
            out.append(Verdict(k, QQ(0), rhs, True))
            continue
        lhs = norm(R, ctx.r, tol).hi
        out.append(Verdict(k, lhs, rhs, lhs <= rhs))
    run.certs = tuple(out)
    return run.certs


@dataclass
class Certification:
    ctx: NormContext
    run: MajorantRun
    verdicts: tuple
    C: int
    P: tuple
    a_rebased: tuple
    monomials: dict

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    @property
    def summary(self) -> str:
        N = len(self.verdicts)
        if self.passed:
            return f"majorant inequality verified to order {N}"
        bad = [v.k for v in self.verdicts if not v.passed]
        return f"majorant inequality fails at k = {', '.join(map(str, bad))}"


def certify_expansion(exp, N: int | None = None, tol=DEFAULT_TOL) -> Certification:
    """Build ``Q``, the norm context and the majorant for a finished expansion."""
    state = exp.state
    red = exp.reduced
    coeffs = list(state.coeffs if N is None else state.coeffs[:N])
    N = len(coeffs)
    if N == 0:
        raise ValueError("no coefficients to certify")
    n, ell, q = red.n, red.ell, red.q_den
    a_reb = rebase_operator(red.a, ell)
    mons = rebase_monomials(red.monomials, n, ell)

    if q.is_one():
        C = 0
    else:
        C = 1
        for k, R in enumerate(coeffs, start=1):
            if R:
                C = max(C, ceil(q_power_exponent(R.den, q) / k))
        for f in list(mons.values()) + list(a_reb):
            if f:
                C = max(C, q_power_exponent(f.den, q))
    Q = q ** C
    Qr = RatFunc.from_poly(Q)
    P = []
    for k, R in enumerate(coeffs, start=1):
        Pk = R * Qr ** k
        if not Pk.is_poly():
            raise ArithmeticError(f"R_(l+{k}) * Q^{k} is not a polynomial")
        P.append(Pk.num)
    c1 = max([ceil(p.degree / k) for k, p in enumerate(P, start=1) if p] + [0])

    # the recursion identity L_k(P_k) = Q**(k+n) Rt_k ties the two bases together
    for k, p in enumerate(P, start=1):
        if calL(p, k, a_reb, Q) != state.rhs[k - 1] * Qr ** (k + n):
            raise ArithmeticError(f"operator identity fails at k={k}")

    extra = list(a_reb) + list(mons.values()) + coeffs
    ctx = choose_r(Q, n, c1, extra)
    ctx = compute_constants(ctx, a_reb, samples=list(enumerate(P, start=1)), tol=tol)
    run = build_majorant(mons, ctx)
    majorant_recursion(run, ctx, N)
    verdicts = certify(coeffs, run, ctx, tol)
    return Certification(ctx, run, verdicts, C, tuple(P), a_reb, mons)
