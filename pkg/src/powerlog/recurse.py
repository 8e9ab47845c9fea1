"""Coefficient recursion for the reduced equation.

For ``psi = sum_{k>=1} R_{l+k}(ln x) x**k`` the coefficient of ``x**k`` in
``L(delta) psi = x M`` is the linear ODE

    sum_j a_j(t) (l + k + d/dt)**j R_{l+k}(t) = Rt_k(t)

whose right-hand side only involves earlier coefficients.  Each equation is
solved exactly with the ansatz ``R = N(t) / q(t)**e``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil

from .exact import Poly, RatFunc, integer_roots, poly_gcd, rational_roots, solve_sparse, squarefree_part
from .frontend.model import Problem
from .reduce import (
    ConditionReport, ReducedEquation, ReductionError, check_condition, choose_ell, compose_shifted,
    p_infinity, reduce_equation,
)
from .series import PowerLogSeries

__all__ = [
    "SolverError", "SolveInfo", "RecursionState", "GrowthReport", "Expansion",
    "solve_rational_ode", "build_rhs", "extend_seed", "expand", "solve_problem",
    "growth_report", "pole_order", "exact_pole_bound",
]


class SolverError(ArithmeticError):
    """No (unique) rational solution was found; ``k`` is the failing index if known."""

    def __init__(self, message: str, k: int | None = None):
        super().__init__(message if k is None else f"{message} (at k={k})")
        self.reason = message
        self.k = k


@dataclass(frozen=True)
class SolveInfo:
    e: int
    degree: int
    attempts: int


def pole_order(f: RatFunc, q: Poly) -> int:
    """Smallest ``e`` with ``den f | q**e`` (``q`` squarefree), i.e. the largest pole order."""
    if not f or f.den.is_one():
        return 0
    e, qe = 0, Poly.const(1)
    limit = f.den.degree
    while e <= limit:
        if f.den.divides(qe):
            return e
        e += 1
        qe = qe * q
    raise SolverError(f"denominator {f.den} has roots outside q = {q}")


def _lcm_den(funcs) -> Poly:
    out = Poly.const(1)
    for f in funcs:
        if f and not f.den.is_one():
            g = poly_gcd(out, f.den)
            out = out * f.den.exact_div(g)
    return out.monic()


def _apply_ansatz_column(alpha, qpows, q, dq, lam, e, n, base: Poly) -> Poly:
    # N_0 = base, N_{j+1} = (lam q - (e+j) q') N_j + q N_j'
    total = Poly()
    cur = base
    for j in range(n + 1):
        if j:
            cur = (q * lam - dq * (e + j - 1)) * cur + q * cur.derivative()
        if alpha[j]:
            total = total + alpha[j] * qpows[n - j] * cur
    return total


def solve_rational_ode(a, lam, rhs: RatFunc, q_den: Poly, e_cap: int | None = None,
                       e_start: int | None = None, exact_e: int | None = None):
    """Unique rational ``R`` with ``sum_j a_j (lam + d/dt)**j R = rhs``.

    ``a`` is normalized (``a_n = 1``).  The pole exponent ``e`` of the ansatz
    starts at the pole order of ``rhs`` (or ``e_start``) and grows until the
    linear system is consistent or ``e_cap`` is exceeded.  ``exact_e`` pins a
    single exponent.  Returns ``(R, SolveInfo)``.
    """
    a = [f if isinstance(f, RatFunc) else RatFunc.const(f) for f in a]
    n = len(a) - 1
    pinf, p = p_infinity(a)
    if not pinf(lam):
        raise SolverError(f"P_inf vanishes at {lam}; the solution is not determined")
    if not rhs:
        return RatFunc.const(0), SolveInfo(0, -1, 0)
    q = q_den.monic() if q_den else Poly.const(1)
    A = _lcm_den(a)
    if not q.is_one():
        # poles of a_j are confined to roots of q
        pole_order(RatFunc(Poly.const(1), A), q)
    alpha = [(f * RatFunc.from_poly(A)).num for f in a]
    s_rhs = pole_order(rhs, q)
    dq = q.derivative()
    dinf = rhs.degree_at_infinity() - p

    if q.is_one():
        es = [0]
    elif exact_e is not None:
        es = [exact_e]
    else:
        start = s_rhs if e_start is None else e_start
        cap = max(start, e_cap if e_cap is not None else start + 4 * (n + 1))
        es = range(start, cap + 1)

    qpows = [Poly.const(1)]
    for _ in range(n):
        qpows.append(qpows[-1] * q)

    attempts = 0
    for e in es:
        attempts += 1
        dN = dinf + e * q.degree
        if dN < 0:
            continue
        target = rhs * RatFunc.from_poly(A * q ** (e + n))
        if not target.is_poly():
            continue
        cols = [_apply_ansatz_column(alpha, qpows, q, dq, lam, e, n, Poly.monomial(i)) for i in range(dN + 1)]
        height = max([c.degree for c in cols] + [target.num.degree]) + 1
        rows = [dict() for _ in range(height)]
        for i, c in enumerate(cols):
            for d, v in enumerate(c.coeffs):
                if v:
                    rows[d][i] = v
        sol = solve_sparse(rows, [target.num[d] for d in range(height)], dN + 1)
        if not sol.consistent:
            continue
        if sol.kernel:
            raise SolverError("rational solution is not unique")
        R = RatFunc(Poly(sol.solution), q ** e)
        return R, SolveInfo(e, dN, attempts)
    raise SolverError("no rational solution within bounds")


def _operator(a, lam, r: RatFunc) -> RatFunc:
    total = RatFunc.const(0)
    cur = r
    for j, aj in enumerate(a):
        if j:
            cur = cur.scale(lam) + cur.derivative() if lam else cur.derivative()
        if aj:
            total = total + aj * cur
    return total


# -- exact pole bound ----------------------------------------------------
def _ord_at(f: RatFunc, t0) -> int:
    """Order of ``f`` at the rational point ``t0``."""
    lin = Poly([-t0, 1])
    o = 0
    num, den = f.num, f.den
    while not num(t0):
        num = num.exact_div(lin)
        o += 1
    while not den(t0):
        den = den.exact_div(lin)
        o -= 1
    return o


def _leading_laurent(f: RatFunc, t0):
    lin = Poly([-t0, 1])
    num, den = f.num, f.den
    while not num(t0):
        num = num.exact_div(lin)
    while not den(t0):
        den = den.exact_div(lin)
    return num(t0) / den(t0)


def exact_pole_bound(red: ReducedEquation):
    """Pole-order slope from indicial polynomials at the finite poles.

    Only available when ``q_den`` splits into rational linear factors.
    Returns ``(C, details)`` or ``None``.
    """
    q = red.q_den
    if q.is_one():
        return 0, []
    if not q.is_real():
        return None
    roots = rational_roots(q)
    if len(roots) != q.degree:
        return None
    details = []
    C = 0
    for t0 in roots:
        orders = {j: _ord_at(aj, t0) for j, aj in enumerate(red.a) if aj}
        gamma = max(j - o for j, o in orders.items())
        P = Poly()
        for j, o in orders.items():
            if j - o == gamma:
                falling = Poly.const(1)
                for i in range(j):
                    falling = falling * Poly([-i, 1])
                P = P + falling * _leading_laurent(red.a[j], t0)
        C1 = max((abs(r) for r in integer_roots(P)), default=0) if P else 0
        C2 = max((-_ord_at(b, t0) + sum(j * e for j, e in enumerate(qv))
                  for (mu, qv), b in red.monomials.items()), default=0)
        details.append({"t0": t0, "gamma": gamma, "P": P, "C1": C1, "C2": C2})
        C = max(C, C1, C2)
    return C, details


# -- recursion state -----------------------------------------------------
@dataclass
class RecursionState:
    """Coefficients ``R_{l+1}, ..., R_{l+k}`` with their jets and bounds."""

    reduced: ReducedEquation
    coeffs: list = field(default_factory=list)
    jets_cache: list = field(default_factory=list)
    q_den: Poly = field(default_factory=lambda: Poly.const(1))
    bounds: tuple = (1, 1)
    exact: bool = False
    infos: list = field(default_factory=list)
    rhs: list = field(default_factory=list)
    _pw: dict = field(default_factory=dict, repr=False)
    _prod: dict = field(default_factory=dict, repr=False)

    @classmethod
    def start(cls, red: ReducedEquation, exact: bool = False) -> "RecursionState":
        q = red.q_den
        bs = list(red.monomials.values())
        C0 = red.n + max([pole_order(b, q) for b in bs] + [pole_order(a, q) for a in red.a] + [0])
        c1 = red.n + max([max(0, b.degree_at_infinity()) for b in bs if b] + [0])
        bounds = (max(C0, 1), max(c1, 1))
        if exact:
            res = exact_pole_bound(red)
            if res is None:
                raise SolverError("exact bounds need q_den to split over the rationals")
            bounds = (max(res[0], 1), bounds[1])
        return cls(red, q_den=q, bounds=bounds, exact=exact)

    @property
    def ell(self) -> int:
        return self.reduced.ell

    @property
    def depth(self) -> int:
        return len(self.coeffs)

    def jet_coeff(self, j: int, i: int) -> RatFunc:
        """``R^j_i = (l + i + d/dt)**j R_{l+i}``."""
        return self.jets_cache[i - 1][j]

    # [x**s] psi_j**e
    def _power(self, j, e, s):
        if s < e:
            return _ZERO
        if e == 1:
            return self.jet_coeff(j, s)
        key = (j, e, s)
        v = self._pw.get(key)
        if v is None:
            v = _ZERO
            for i in range(1, s - (e - 1) + 1):
                a = self.jet_coeff(j, i)
                if a:
                    b = self._power(j, e - 1, s - i)
                    if b:
                        v = v + a * b
            self._pw[key] = v
        return v

    # [x**s] prod_j psi_j**q_j
    def _product(self, q: tuple, s: int):
        nz = [j for j, e in enumerate(q) if e]
        if not nz:
            return RatFunc.const(1) if s == 0 else _ZERO
        j = nz[0]
        if len(nz) == 1:
            return self._power(j, q[j], s)
        key = (q, s)
        v = self._prod.get(key)
        if v is None:
            rest = list(q)
            rest[j] = 0
            rest = tuple(rest)
            low_rest = sum(rest)
            v = _ZERO
            for i in range(q[j], s - low_rest + 1):
                a = self._power(j, q[j], i)
                if a:
                    b = self._product(rest, s - i)
                    if b:
                        v = v + a * b
            self._prod[key] = v
        return v

    def push(self, R: RatFunc, info: SolveInfo, rhs: RatFunc):
        k = self.depth + 1
        lam = self.ell + k
        jets = [R]
        for _ in range(self.reduced.n):
            c = jets[-1]
            jets.append(c.scale(lam) + c.derivative())
        self.coeffs.append(R)
        self.jets_cache.append(tuple(jets))
        self.infos.append(info)
        self.rhs.append(rhs)

    def step(self) -> RatFunc:
        """Compute the next coefficient ``R_{l+k}``."""
        k = self.depth + 1
        red = self.reduced
        rhs = build_rhs(self, k)
        C, _ = self.bounds
        try:
            if self.exact:
                R, info = solve_rational_ode(red.a, red.ell + k, rhs, self.q_den, exact_e=C * k)
            else:
                R, info = solve_rational_ode(red.a, red.ell + k, rhs, self.q_den, e_cap=4 * C * k)
        except SolverError as exc:
            raise SolverError(exc.reason, k) from None
        if _operator(red.a, red.ell + k, R) != rhs:
            raise SolverError("back-substitution check failed", k)
        self.push(R, info, rhs)
        return R


_ZERO = RatFunc.const(0)


def build_rhs(state: RecursionState, k: int, normalized: bool = True) -> RatFunc:
    """Coefficient of ``x**k`` in ``x M(x, t, psi, (delta+l) psi, ...)``.

    Needs ``R_{l+1}, ..., R_{l+k-1}``.  With ``normalized=False`` the value is
    multiplied back by the leading coefficient that was divided out.
    """
    if k < 1:
        raise ValueError("k starts at 1")
    if state.depth < k - 1:
        raise ValueError(f"coefficients up to R_(l+{k - 1}) are needed")
    total = _ZERO
    for (mu, q), b in state.reduced.monomials.items():
        s = k - 1 - mu
        if s < 0 or s < sum(q):
            continue
        c = state._product(q, s)
        if c:
            total = total + b * c
    if not normalized:
        total = total * state.reduced.a_n_orig
    return total


# -- seed extension and driver -----------------------------------------------
def extend_seed(problem: Problem, report: ConditionReport, upto: int, seed: dict | None = None) -> dict:
    """Extend the seed prefix through ``x**upto`` by solving for each ``R_k``.

    For each missing ``k`` the equation is composed with
    ``y = phi_{k-1} + x**k w``; when ``w`` enters linearly at ``x**(k+m)``
    with the leading coefficients ``a_j`` and nonlinearly only later, ``R_k``
    solves ``sum_j a_j (k + d/dt)**j R_k = -[F(phi_{k-1})]_{k+m} / a_n``.
    """
    prefix = dict(problem.seed_dict() if seed is None else seed)
    given = {k for k, _ in problem.seed} if seed is None else set(prefix)
    m, n = report.m, report.n
    an = report.a[n]
    a_norm = [f / an for f in report.a]
    # unlisted exponents after the first listed one are solved for, gaps included
    for k in range(min(given, default=-1) + 1, upto + 1):
        if k in given:
            continue
        G = compose_shifted(problem.ode, {i: r for i, r in prefix.items() if i < k}, k)
        e0 = k + m
        lin = [_ZERO] * (n + 1)
        free = _ZERO
        for (e, q), c in G.terms.items():
            d = sum(q)
            if d == 0:
                if e < e0:
                    raise ReductionError(f"seed does not satisfy the equation at x^{e}")
                if e == e0:
                    free = c
            elif d == 1:
                if e < e0:
                    raise ReductionError(f"seed prefix too short to determine R_{k}")
                if e == e0:
                    lin[q.index(1)] = c
            elif e <= e0:
                raise ReductionError(f"seed prefix too short to determine R_{k}")
        if tuple(lin) != tuple(report.a):
            raise ReductionError(f"seed prefix too short to determine R_{k}")
        rhs = -free / an
        q = _lcm_den(a_norm + [rhs])
        q = squarefree_part(q) if not q.is_one() else q
        try:
            R, _ = solve_rational_ode(a_norm, k, rhs, q, e_cap=pole_order(rhs, q) + 8 * (n + 1))
        except SolverError as exc:
            raise SolverError(f"seed extension: {exc.reason}", k) from None
        if R:
            prefix[k] = R
    return prefix


@dataclass
class Expansion:
    """Everything computed for one problem."""

    problem: Problem
    report: ConditionReport
    ell: int
    Pinf: Poly
    roots: tuple
    seed: dict
    reduced: ReducedEquation
    state: RecursionState

    @property
    def m(self) -> int:
        return self.report.m

    def coefficient(self, k: int) -> RatFunc:
        if k <= self.ell:
            return self.seed.get(k, _ZERO)
        i = k - self.ell
        if i > self.state.depth:
            raise IndexError(f"R_{k} has not been computed")
        return self.state.coeffs[i - 1]

    @property
    def order(self) -> int:
        return self.ell + self.state.depth

    def series(self, N: int | None = None) -> PowerLogSeries:
        N = self.order if N is None else N
        if N > self.order:
            raise IndexError(f"expansion only reaches x^{self.order}")
        return PowerLogSeries({k: self.coefficient(k) for k in range(N + 1)}, N)

    def extend(self, N: int):
        while self.order < N:
            self.state.step()
        return self


def solve_problem(problem: Problem, N: int | None = None, exact_bounds: bool = False,
                  depth: int | None = None) -> Expansion:
    """Check, reduce and run the recursion up to ``x**N``."""
    N = problem.expand_to if N is None else N
    report = check_condition(problem, depth)
    if not report.holds:
        raise ConditionFailure(report)
    ell, pinf, roots = choose_ell(report)
    seed = extend_seed(problem, report, ell)
    red = reduce_equation(problem, report, ell, seed)
    state = RecursionState.start(red, exact_bounds)
    exp = Expansion(problem, report, ell, pinf, tuple(roots), {k: r for k, r in seed.items() if k <= ell}, red, state)
    exp.extend(N)
    # a user seed reaching past l must agree with the recursion
    for k, r in problem.seed:
        if ell < k <= exp.order and exp.coefficient(k) != r:
            raise ReductionError(f"seed coefficient R_{k} disagrees with the recursion")
    return exp


class ConditionFailure(ValueError):
    def __init__(self, report: ConditionReport):
        super().__init__(f"condition does not hold: {report.reason}")
        self.report = report


def expand(problem: Problem, N: int | None = None, exact_bounds: bool = False) -> PowerLogSeries:
    """Power-log series solution through ``x**N``."""
    exp = solve_problem(problem, N, exact_bounds)
    N = problem.expand_to if N is None else N
    return exp.series(N)


# -- growth ----------------------------------------------------------------
@dataclass(frozen=True)
class GrowthRow:
    k: int
    pole_order: int
    degree_at_infinity: int | None
    pole_ok: bool
    degree_ok: bool


@dataclass(frozen=True)
class GrowthReport:
    rows: tuple
    C: int
    c1: int
    fitted_C: int
    fitted_c1: int

    @property
    def passed(self) -> bool:
        return all(r.pole_ok and r.degree_ok for r in self.rows)


def growth_report(state: RecursionState) -> GrowthReport:
    """Measured pole orders and degrees at infinity of ``R_{l+k}`` against ``k C``, ``k c1``."""
    if not state.coeffs:
        raise ValueError("no coefficients computed yet")
    C, c1 = state.bounds
    rows = []
    fC = fc = 0
    for k, R in enumerate(state.coeffs, start=1):
        po = pole_order(R, state.q_den)
        di = R.degree_at_infinity() if R else None
        fC = max(fC, ceil(po / k))
        if di is not None:
            fc = max(fc, ceil(max(di, 0) / k))
        rows.append(GrowthRow(k, po, di, po <= k * C, di is None or di <= k * c1))
    return GrowthReport(tuple(rows), C, c1, fC, fc)
