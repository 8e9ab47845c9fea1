"""Independent reference computations used to cross-check the main pipeline.

These deliberately avoid the fast paths: dense linear algebra for the
undetermined-coefficient oracle, a plain series reciprocal, and Picard
iteration for the majorant equation.
"""

from __future__ import annotations

import json
from importlib import resources
from math import comb
from pathlib import Path

from .exact import QQ, Poly, RatFunc, parse_scalar, solve_linear_system
from .frontend import parse_poly, problem_from_dict
from .majorant import MajorantRun, majorant_recursion
from .majorant.context import NormContext
from .recurse import solve_problem
from .series import PowerLogSeries, jet, substitute, valuation

__all__ = [
    "OracleError", "oracle_undetermined", "oracle_invert", "oracle_bruteforce_majorant",
    "oracle_rhs_direct", "load_oracle_cases", "run_oracle_cases",
]


class OracleError(ValueError):
    pass


def _as_poly(c) -> Poly:
    if isinstance(c, Poly):
        return c
    if isinstance(c, str):
        return parse_poly(c)
    return Poly.const(c)


def _apply(coeffs, lam0, P: Poly) -> Poly:
    # sum_j c_j (lam0 + d/dt)**j P, expanded binomially
    out = Poly()
    for j, c in enumerate(coeffs):
        if not c:
            continue
        for i in range(j + 1):
            D = P
            for _ in range(i):
                D = D.derivative()
            w = comb(j, i) * QQ(lam0) ** (j - i)
            if w and D:
                out = out + c * D * Poly.const(w)
    return out


def oracle_undetermined(coeffs, lam0, rhs, deg_cap: int):
    """Polynomial ``P`` of degree ``<= deg_cap`` with ``sum_j c_j (lam0 + d/dt)**j P = rhs``.

    ``coeffs`` may be scalars, polynomials or polynomial strings.  Returns
    ``None`` when no such ``P`` exists.  When the solution is not unique the
    representative with the free coefficients set to zero is returned.
    """
    cs = [_as_poly(c) for c in coeffs]
    rhs = _as_poly(rhs)
    cols = [_apply(cs, lam0, Poly.monomial(i)) for i in range(deg_cap + 1)]
    nrows = max([c.degree + 1 for c in cols if c] + [rhs.degree + 1, 1])
    A = [[cols[i][r] for i in range(deg_cap + 1)] for r in range(nrows)]
    b = [rhs[r] for r in range(nrows)]
    sol = solve_linear_system(A, b)
    if not sol.consistent:
        return None
    return Poly(list(sol.solution))


def oracle_invert(series: PowerLogSeries, N: int) -> PowerLogSeries:
    """``1/series`` through ``x**N`` by the schoolbook recurrence."""
    a0 = series[0]
    if not a0:
        raise OracleError("not invertible as power-log series")
    inv0 = a0.inverse()
    b = [inv0]
    for k in range(1, N + 1):
        acc = RatFunc.const(0)
        for i in range(1, k + 1):
            ai = series[i]
            if ai:
                acc = acc + ai * b[k - i]
        b.append(-acc * inv0)
    return PowerLogSeries(dict(enumerate(b)), N)


def oracle_bruteforce_majorant(monomials, sigma, N: int) -> list:
    """``[Pt_1, ..., Pt_N]`` for ``sigma U = x sum w x**mu t**nu U**s`` by Picard iteration.

    ``monomials`` holds ``(w, mu, nu, s)`` tuples.  Each pass fixes at least
    one more coefficient, so ``N + 1`` passes suffice.
    """
    if N > 12:
        raise OracleError("brute-force majorant is only meant for small N")
    inv = 1 / QQ(sigma)

    def mul(u, v):
        out = [Poly() for _ in range(N + 1)]
        for i, p in enumerate(u):
            if not p:
                continue
            for j in range(N + 1 - i):
                if v[j]:
                    out[i + j] = out[i + j] + p * v[j]
        return out

    U = [Poly() for _ in range(N + 1)]
    for _ in range(N + 1):
        new = [Poly() for _ in range(N + 1)]
        for w, mu, nu, s in monomials:
            pw = [Poly.const(1)] + [Poly() for _ in range(N)]
            for _ in range(s):
                pw = mul(pw, U)
            for i, p in enumerate(pw):
                e = i + mu + 1
                if p and e <= N:
                    new[e] = new[e] + p * Poly.monomial(nu, QQ(w) * inv)
        U = new
    return U[1:]


def oracle_rhs_direct(exp, k: int) -> RatFunc:
    """``Rt_k`` read off from ``F(x, phi_{l+k-1})`` at order ``x**(m+l+k)``."""
    ell, m = exp.ell, exp.m
    e = m + ell + k
    phi = PowerLogSeries({i: exp.coefficient(i) for i in range(ell + k)}, e)
    F = substitute(exp.problem.ode, jet(phi, exp.problem.ode.n, 0))
    v = valuation(F)
    if isinstance(v, int) and v < e:
        raise OracleError(f"residual has valuation {v} below {e}")
    return -F[e] / exp.reduced.a_n_orig


# -- the case file ---------------------------------------------------------
def load_oracle_cases(path=None) -> list:
    if path is None:
        text = resources.files("powerlog").joinpath("fixtures/oracles.json").read_text()
    else:
        text = Path(path).read_text()
    return json.loads(text)["cases"]


def _fixture(name):
    text = resources.files("powerlog").joinpath(f"fixtures/{name}.json").read_text()
    return problem_from_dict(json.loads(text), name)


def _run_case(case) -> tuple[bool, str]:
    kind, inp, exp = case["kind"], case["inputs"], case["expected"]
    if kind == "undetermined":
        P = oracle_undetermined(inp["coeffs"], parse_scalar(str(inp["lambda0"])), inp["rhs"], inp["deg_cap"])
        if exp == "none":
            return P is None, "none" if P is None else str(P)
        return P is not None and P == parse_poly(exp), str(P)
    if kind == "invert":
        N = inp["N"]
        src = solve_problem(_fixture(inp["fixture"]), N).series(N)
        tgt = solve_problem(_fixture(exp["fixture"]), N).series(N)
        inv = oracle_invert(src, N)
        bad = [k for k in range(N + 1) if inv[k] != tgt[k]]
        return not bad, "agree" if not bad else f"differ at k={bad}"
    if kind == "majorant":
        mons = [tuple(m) for m in inp["monomials"]]
        got = oracle_bruteforce_majorant(mons, parse_scalar(str(inp["sigma"])), inp["N"])
        ok = [str(p) for p in got] == [str(parse_poly(p)) for p in exp]
        run = MajorantRun(tuple((QQ(w), mu, nu, s) for w, mu, nu, s in mons))
        ctx = NormContext(r=QQ(1), Q=Poly.const(1), n=1, c1=0, sigma=parse_scalar(str(inp["sigma"])))
        ok = ok and list(majorant_recursion(run, ctx, inp["N"])) == got
        return ok, ", ".join(map(str, got))
    raise OracleError(f"unknown oracle kind {kind!r}")


def run_oracle_cases(path=None) -> list:
    """Run every case; returns ``{name, kind, pass, detail}`` records."""
    out = []
    for case in load_oracle_cases(path):
        ok, detail = _run_case(case)
        out.append({"name": case["name"], "kind": case["kind"], "pass": bool(ok), "detail": detail})
    return out
