"""JSON documents produced by the command line."""

from __future__ import annotations

import csv
import json

from ..exact import format_poly, format_ratfunc
from ..majorant import NormError, certify_expansion, norm
from ..oracles import run_oracle_cases
from ..recurse import Expansion, growth_report
from ..reduce import ConditionReport
from .numeric import NumericError, numeric_table, radius_estimate

__all__ = [
    "SCHEMA", "dumps", "coefficient_json", "check_json", "reduce_json", "expand_json", "certify_json",
    "numeric_json", "write_csv", "report_json",
]

SCHEMA = 1
CSV_COLUMNS = ("x_re", "x_im", "N", "value_re", "value_im", "residual_abs")


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _f(v: float) -> float:
    return float(f"{v:.17g}")


def coefficient_json(k: int, R) -> dict:
    return {"k": k, "num": format_poly(R.num), "den": format_poly(R.den)}


def check_json(report: ConditionReport) -> dict:
    return {
        "m": report.m,
        "a": [format_ratfunc(f) for f in report.a],
        "holds": report.holds,
        "holds_strict": report.holds_strict,
        "stable": report.stable,
        "depth_used": report.depth_used,
        "valuations": list(report.valuations),
        "reason": report.reason,
    }


def reduce_json(exp: Expansion) -> dict:
    red = exp.reduced
    mons = [
        {"mu": mu, "q": list(q), "b": format_ratfunc(b)}
        for (mu, q), b in sorted(red.monomials.items())
    ]
    return {
        "ell": red.ell, "m": red.m, "n": red.n, "p": red.p,
        "a": [format_ratfunc(f) for f in red.a],
        "a_n_original": format_ratfunc(red.a_n_orig),
        "P_infinity": format_poly(red.Pinf, "lambda"),
        "integer_roots": list(red.integer_roots),
        "q": format_poly(red.q_den),
        "seed": [coefficient_json(k, r) for k, r in sorted(red.prefix.items()) if k <= red.ell],
        "monomials": mons,
    }


def expand_json(exp: Expansion, N: int) -> dict:
    state = exp.state
    g = growth_report(state) if state.coeffs else None
    doc = {
        "ell": exp.ell, "m": exp.m, "order": N,
        "coefficients": [coefficient_json(k, exp.coefficient(k)) for k in range(N + 1)],
        "bounds": {"C": state.bounds[0], "c1": state.bounds[1], "mode": "exact" if state.exact else "heuristic"},
    }
    if g is not None:
        doc["growth"] = {
            "fitted_C": g.fitted_C, "fitted_c1": g.fitted_c1, "passed": g.passed,
            "rows": [{"k": r.k, "pole_order": r.pole_order, "degree_at_infinity": r.degree_at_infinity}
                     for r in g.rows],
        }
    return doc


def certify_json(cert) -> dict:
    return {
        "r": str(cert.ctx.r),
        "Q": format_poly(cert.ctx.Q),
        "constants": cert.ctx.to_json(),
        "per_k": [v.to_json() for v in cert.verdicts],
        "summary": cert.summary,
        "passed": cert.passed,
    }


def numeric_json(rows) -> list:
    return [
        {"x_re": _f(r.x.real), "x_im": _f(r.x.imag), "N": r.N, "value_re": _f(r.value.real),
         "value_im": _f(r.value.imag), "residual_abs": _f(r.residual_abs)}
        for r in rows
    ]


def write_csv(path, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in rows:
            w.writerow([f"{r.x.real:.17g}", f"{r.x.imag:.17g}", r.N, f"{r.value.real:.17g}",
                        f"{r.value.imag:.17g}", f"{r.residual_abs:.17g}"])


def report_json(exp: Expansion, N: int, points, bits: int, with_oracles: bool = False):
    """Full pipeline document; also returns the numeric rows for CSV output."""
    doc = {
        "check": check_json(exp.report),
        "reduce": reduce_json(exp),
        "expand": expand_json(exp, N),
    }
    cert = None
    try:
        cert = certify_expansion(exp, N - exp.ell) if N > exp.ell else None
    except (NormError, ArithmeticError, ValueError) as exc:
        doc["certify"] = {"error": str(exc)}
    if cert is not None:
        doc["certify"] = certify_json(cert)
        norms = [norm(exp.coefficient(k), cert.ctx.r).hi for k in range(1, N + 1)]
        if len(norms) >= 5:
            rad, how = radius_estimate(norms)
            doc["radius_estimate"] = {"value": None if rad == float("inf") else _f(rad), "method": how,
                                      "r": str(cert.ctx.r)}
    rows = ()
    if points:
        try:
            rows = numeric_table(exp.problem.ode, exp.series(N), points, range(exp.ell, N + 1), bits)
            doc["numeric"] = numeric_json(rows)
        except NumericError as exc:
            doc["numeric"] = {"error": str(exc)}
    if with_oracles:
        doc["oracles"] = run_oracle_cases()
    return doc, rows
