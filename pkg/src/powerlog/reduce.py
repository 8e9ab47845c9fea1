"""Condition check, reduction to ``L(delta) u = x M`` and the choice of ``l``.

Substituting ``y = phi_l + x**l u`` into ``F`` and writing
``U_j = (delta + l)**j u`` (so that ``delta**j (x**l u) = x**l U_j``) turns
``F`` into a polynomial in ``x, U_0, ..., U_n`` with coefficients rational
in ``t = ln x``.  Everything here is exact because ``phi_l`` is a finite sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exact import Poly, RatFunc, integer_roots, laurent_at_infinity, poly_gcd, squarefree_part
from .frontend.model import DeltaPolynomial, Problem
from .series import AllZero, PowerLogSeries, delta, jet, partial_series, substitute, valuation

__all__ = [
    "JetPoly", "ConditionReport", "ReducedEquation", "ReductionError", "IndeterminateError",
    "compose_shifted", "check_condition", "choose_ell", "reduce_equation", "p_infinity",
]


class ReductionError(ArithmeticError):
    """The seed does not satisfy the equation to the order the reduction needs."""


class IndeterminateError(ValueError):
    """The valuation of ``dF/dy_n`` is not visible within the requested depth."""


class JetPoly:
    """Sparse polynomial in ``x, U_0..U_n`` with :class:`RatFunc` coefficients.

    ``terms`` maps ``(e, q)`` (``x``-degree and exponent tuple) to a nonzero
    coefficient.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def constant(cls, nvars, c) -> "JetPoly":
        return cls(nvars, {(0, (0,) * nvars): c if isinstance(c, RatFunc) else RatFunc.const(c)})

    @classmethod
    def variable(cls, nvars, j, e=0) -> "JetPoly":
        q = [0] * nvars
        q[j] = 1
        return cls(nvars, {(e, tuple(q)): RatFunc.const(1)})

    def __eq__(self, other):
        return isinstance(other, JetPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __repr__(self):
        body = ", ".join(f"x^{e}*U^{q}: {c}" for (e, q), c in sorted(self.terms.items()))
        return f"JetPoly({{{body}}})"

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return JetPoly(self.nvars, out)

    def __neg__(self):
        return JetPoly(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: RatFunc) -> "JetPoly":
        return JetPoly(self.nvars, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        out: dict = {}
        for (e1, q1), c1 in self.terms.items():
            for (e2, q2), c2 in other.terms.items():
                k = (e1 + e2, tuple(a + b for a, b in zip(q1, q2)))
                p = c1 * c2
                s = out.get(k)
                out[k] = p if s is None else s + p
        return JetPoly(self.nvars, out)

    def shift_x(self, mu: int) -> "JetPoly":
        return JetPoly(self.nvars, {(e + mu, q): c for (e, q), c in self.terms.items()})

    def u_degree_parts(self):
        """Split into ``(free, linear, nonlinear)`` by total ``U``-degree."""
        free, lin, non = {}, {}, {}
        for (e, q), c in self.terms.items():
            d = sum(q)
            (free if d == 0 else lin if d == 1 else non)[(e, q)] = c
        return JetPoly(self.nvars, free), JetPoly(self.nvars, lin), JetPoly(self.nvars, non)

    def min_x_degree(self):
        return min((e for e, _ in self.terms), default=None)


def _prefix_series(coeffs: dict, trunc: int) -> PowerLogSeries:
    return PowerLogSeries({k: r for k, r in coeffs.items() if k <= trunc}, max(trunc, 0))


def compose_shifted(F: DeltaPolynomial, prefix: dict, s: int) -> JetPoly:
    """``F(x, Y_0, ..., Y_n)`` with ``Y_j = delta**j phi + x**s U_j``.

    ``phi = sum_k prefix[k] x**k`` is a finite sum, so the result is exact.
    """
    n = F.n
    nv = n + 1
    top = max(prefix, default=0)
    phi = _prefix_series(prefix, top)
    jets = jet(phi, n, 0)
    ys = []
    for j in range(nv):
        terms = {(k, (0,) * nv): r for k, r in jets[j].coeffs.items()}
        q = [0] * nv
        q[j] = 1
        terms[(s, tuple(q))] = RatFunc.const(1)
        ys.append(JetPoly(nv, terms))

    cache: list[dict[int, JetPoly]] = [{0: JetPoly.constant(nv, 1), 1: y} for y in ys]

    def power(j, e):
        c = cache[j]
        if e not in c:
            c[e] = power(j, e - 1) * ys[j]
        return c[e]

    total = JetPoly(nv)
    for (mu, q), c in F.sorted_terms():
        term = JetPoly.constant(nv, RatFunc.const(c))
        for j, e in enumerate(q):
            if e:
                term = term * power(j, e)
        total = total + term.shift_x(mu)
    return total


# -- condition check -----------------------------------------------------
@dataclass(frozen=True)
class ConditionReport:
    """Leading terms ``a_j(t) x**m`` of ``dF/dy_j`` on the seed prefix.

    ``holds`` uses the reading where ``m`` is fixed by ``dF/dy_n`` and the
    other partials need only valuation ``>= m``; ``holds_strict`` additionally
    asks every partial to have valuation exactly ``m``.
    """

    m: int
    a: tuple
    holds: bool
    depth_used: int
    stable: bool
    holds_strict: bool = False
    valuations: tuple = ()
    reason: str = ""

    @property
    def n(self) -> int:
        return len(self.a) - 1


def _leading(F: DeltaPolynomial, prefix: dict, depth: int):
    phi = _prefix_series(prefix, depth)
    jets = jet(phi, F.n, 0)
    vals, series = [], []
    for j in range(F.n + 1):
        s = partial_series(F, j, jets)
        series.append(s)
        vals.append(valuation(s))
    return vals, series


def _locked(F: DeltaPolynomial, prefix: dict, m: int) -> bool:
    """True when no later seed coefficient can alter any partial at orders ``<= m``."""
    end = max(prefix, default=-1)
    for j in range(F.n + 1):
        dj = F.partial(j)
        if dj.is_zero():
            continue
        g = compose_shifted(dj, prefix, end + 1)
        for (e, q), _ in g.terms.items():
            if any(q) and e <= m:
                return False
    return True


def check_condition(problem: Problem, depth: int | None = None, seed: dict | None = None) -> ConditionReport:
    """Extract ``m`` and ``a_0..a_n`` and decide whether the hypothesis holds."""
    F = problem.ode
    depth = problem.check_depth if depth is None else depth
    prefix = problem.seed_dict() if seed is None else seed

    def at(d):
        vals, series = _leading(F, prefix, d)
        vn = vals[F.n]
        if isinstance(vn, AllZero):
            return None
        m = vn
        a = tuple(series[j][m] for j in range(F.n + 1))
        return m, a, vals

    first = at(depth)
    if first is None:
        raise IndeterminateError(f"dF/dy{F.n} vanishes up to order {depth}; increase the depth")
    m, a, vals = first
    second = at(depth + 1)
    stable = second is not None and second[:2] == (m, a) and _locked(F, prefix, m)

    vnum = tuple(v if isinstance(v, int) else None for v in vals)
    weak = all(v is None or v >= m for v in vnum)
    strict = all(v == m for v in vnum)
    reason = ""
    if not weak:
        bad = [j for j, v in enumerate(vnum) if v is not None and v < m]
        reason = f"valuation of dF/dy{bad[0]} is {vnum[bad[0]]} < m = {m}"
    elif not stable:
        reason = "leading terms not locked by the seed prefix"
    holds = weak and stable
    return ConditionReport(m, a, holds, depth, stable, holds and strict, vnum, reason)


# -- choice of l ---------------------------------------------------------
def p_infinity(a_norm) -> tuple[Poly, int]:
    """``P_inf(lambda) = sum_j a_{j,p} lambda**j`` and the common degree ``p``."""
    degs = [f.degree_at_infinity() for f in a_norm if f]
    p = max(degs)
    coeffs = []
    for f in a_norm:
        if f and f.degree_at_infinity() == p:
            coeffs.append(laurent_at_infinity(f, 1)[0][1])
        else:
            coeffs.append(0)
    return Poly(coeffs), p


def choose_ell(report: ConditionReport, problem: Problem | None = None):
    """Smallest ``l > m`` such that ``P_inf`` has no integer root above ``l``.

    Returns ``(l, P_inf, sorted integer roots)``.
    """
    if not report.holds:
        raise ValueError("the condition does not hold; no reduction is possible")
    an = report.a[-1]
    pinf, _ = p_infinity([f / an for f in report.a])
    roots = sorted(integer_roots(pinf))
    ell = max([report.m + 1] + [r for r in roots if r > report.m])
    return ell, pinf, roots


# -- reduction -----------------------------------------------------------
@dataclass(frozen=True)
class ReducedEquation:
    """``sum_j a_j(t) (delta+l)**j u = x M(x, t, U)`` with ``a_n = 1``.

    ``monomials`` maps ``(mu, q)`` to ``b_{q,mu}(t)``: ``M = sum b x**mu U**q``.
    ``a_n_orig`` is the leading coefficient divided out.
    """

    ell: int
    n: int
    m: int
    a: tuple
    monomials: dict
    p: int
    Pinf: Poly
    integer_roots: tuple
    a_n_orig: RatFunc
    prefix: dict = field(default_factory=dict)
    q_den: Poly = field(default_factory=lambda: Poly.const(1))

    def operator(self, lam, r: RatFunc) -> RatFunc:
        """``sum_j a_j (lam + d/dt)**j r``."""
        total = RatFunc.const(0)
        cur = r
        for j, aj in enumerate(self.a):
            if j:
                cur = cur.scale(lam) + cur.derivative() if lam else cur.derivative()
            if aj:
                total = total + aj * cur
        return total

    def expand_back(self) -> JetPoly:
        """``a_n_orig x**(m+l) (L(delta) u - x M)`` as a polynomial in ``x, U``."""
        nv = self.n + 1
        e0 = self.m + self.ell
        out = JetPoly(nv)
        for j, aj in enumerate(self.a):
            if aj:
                out = out + JetPoly.variable(nv, j, e0).scale(aj * self.a_n_orig)
        for (mu, q), b in self.monomials.items():
            out = out + JetPoly(nv, {(mu + e0 + 1, q): -b * self.a_n_orig})
        return out

    def u_free_valuation(self, problem: Problem):
        phi = _prefix_series(self.prefix, self.ell + self.m + 1 + problem.ode.x_degree())
        return valuation(substitute(problem.ode, jet(phi, self.n, 0)))


def _common_squarefree_den(funcs) -> Poly:
    den = Poly.const(1)
    for f in funcs:
        if f and not f.den.is_one():
            d = squarefree_part(f.den)
            g = poly_gcd(den, d)
            den = den * d.exact_div(g)
    return den.monic()


def reduce_equation(problem: Problem, report: ConditionReport, ell: int, seed: dict | None = None) -> ReducedEquation:
    """Substitute ``y = phi_l + x**l u`` and read off ``L`` and ``M``."""
    if not report.holds:
        raise ValueError("the condition does not hold; no reduction is possible")
    m, n = report.m, report.n
    if ell <= m:
        raise ValueError(f"l = {ell} must exceed m = {m}")
    prefix = dict(problem.seed_dict() if seed is None else seed)
    top = max(prefix, default=-1)
    if top > ell:
        prefix = {k: r for k, r in prefix.items() if k <= ell}
    G = compose_shifted(problem.ode, prefix, ell)
    e0 = m + ell

    a_orig = [RatFunc.const(0)] * (n + 1)
    rest = {}
    for (e, q), c in G.terms.items():
        d = sum(q)
        if d == 1 and e == e0:
            a_orig[q.index(1)] = c
        elif e <= e0:
            kind = "u-free part" if d == 0 else "linear part" if d == 1 else "nonlinear part"
            raise ReductionError(
                f"{kind} of F(x, phi_{ell} + x^{ell} u) has a term at x^{e}; "
                f"valuation must be at least {e0 + 1 if d != 1 else e0}")
        else:
            rest[(e, q)] = c
    if tuple(a_orig) != tuple(report.a):
        raise ReductionError("leading linear coefficients differ from the condition report")
    an = a_orig[n]
    a_norm = tuple(f / an for f in a_orig)
    monomials = {(e - e0 - 1, q): -c / an for (e, q), c in rest.items()}
    pinf, p = p_infinity(a_norm)
    roots = tuple(sorted(integer_roots(pinf)))
    if any(r > ell for r in roots):
        raise ValueError(f"P_inf has integer roots above l = {ell}")
    q_den = _common_squarefree_den(list(a_norm) + list(monomials.values()))
    return ReducedEquation(ell, n, m, a_norm, monomials, p, pinf, roots, an, prefix, q_den)
