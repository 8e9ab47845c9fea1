"""Numeric evaluation of truncated series with the principal logarithm."""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from ..exact import GaussianRational, RatFunc
from ..frontend.model import DeltaPolynomial
from ..series import PowerLogSeries, jet

__all__ = [
    "NumericError", "NumericRow", "NumericReport", "eval_truncated", "residual", "radius_estimate",
    "numeric_table",
]


class NumericError(ValueError):
    """Evaluation point rejected (``x = 0`` or too close to a pole of a coefficient)."""


def _to_mp(c):
    if isinstance(c, GaussianRational):
        return mpmath.mpc(_to_mp(c.re), _to_mp(c.im))
    return mpmath.mpf(int(c.numerator)) / int(c.denominator)


def _horner(coeffs, z):
    acc = mpmath.mpc(0)
    for c in reversed(coeffs):
        acc = acc * z + _to_mp(c)
    return acc


def _eval_ratfunc(f: RatFunc, t, bits: int):
    den = _horner(f.den.coeffs, t)
    if abs(den) < mpmath.mpf(2) ** (-(bits // 2)):
        raise NumericError("log-pole proximity")
    return _horner(f.num.coeffs, t) / den


def _log(x):
    x = mpmath.mpc(x)
    if x == 0:
        raise NumericError("cannot evaluate at x = 0")
    return mpmath.log(x)


def _eval_series(s: PowerLogSeries, N: int, x, t, bits: int):
    total = mpmath.mpc(0)
    for k, r in s.items():
        if k > N:
            break
        total += _eval_ratfunc(r, t, bits) * x ** k
    return total


def eval_truncated(series: PowerLogSeries, N: int, x, precision_bits: int = 128):
    """``sum_{k<=N} R_k(ln x) x**k`` as an ``mpmath.mpc``."""
    with mpmath.workprec(precision_bits):
        xm = mpmath.mpc(x)
        t = _log(xm)
        return +_eval_series(series, N, xm, t, precision_bits)


def residual(ode: DeltaPolynomial, series: PowerLogSeries, N: int, x, precision_bits: int = 128) -> float:
    """``|F(x, phi_N, delta phi_N, ..., delta**n phi_N)|``.

    The jets are formed exactly before evaluation; nothing from the
    coefficient recursion is reused.
    """
    phi = series.truncate(N) if N <= series.trunc else series
    jets = jet(phi, ode.n, 0)
    with mpmath.workprec(precision_bits):
        xm = mpmath.mpc(x)
        t = _log(xm)
        ys = [_eval_series(j, N, xm, t, precision_bits) for j in jets]
        total = mpmath.mpc(0)
        for (mu, q), c in ode.sorted_terms():
            term = _to_mp(c) * xm ** mu
            for j, e in enumerate(q):
                if e:
                    term *= ys[j] ** e
            total += term
        return float(abs(total))


def radius_estimate(coeff_norms, ks=None, window: int | None = None) -> tuple[float, str]:
    """Heuristic radius ``1/rho`` from the growth of coefficient norms.

    ``rho`` is the largest ratio ``(n_j / n_i)**(1/(k_j - k_i))`` over
    consecutive nonzero entries in the trailing window.  Needs at least five
    points; an all-zero tail gives ``inf``.
    """
    norms = [float(v) for v in coeff_norms]
    if len(norms) < 5:
        raise ValueError("radius estimate needs at least 5 points")
    ks = list(range(1, len(norms) + 1)) if ks is None else list(ks)
    w = window or max(5, len(norms) // 2)
    tail = [(k, v) for k, v in zip(ks[-w:], norms[-w:]) if v > 0]
    if len(tail) < 2:
        return math.inf, "heuristic"
    rho = 0.0
    for (k1, v1), (k2, v2) in zip(tail, tail[1:]):
        rho = max(rho, math.exp((math.log(v2) - math.log(v1)) / (k2 - k1)))
    return (math.inf if rho == 0 else 1.0 / rho), "heuristic"


@dataclass(frozen=True)
class NumericRow:
    x: complex
    N: int
    value: complex
    residual_abs: float


@dataclass(frozen=True)
class NumericReport:
    rows: tuple
    radius: float | None = None
    radius_method: str = "heuristic"


def numeric_table(ode, series: PowerLogSeries, points, orders, precision_bits: int = 128) -> tuple:
    rows = []
    for x in points:
        for N in orders:
            v = eval_truncated(series, N, x, precision_bits)
            res = residual(ode, series, N, x, precision_bits)
            rows.append(NumericRow(complex(x), N, complex(v), res))
    return tuple(rows)
