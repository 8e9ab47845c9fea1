"""``powerlog`` command line.

Exit codes: 0 success, 1 usage or input error, 2 the leading-term condition
fails (or cannot be decided), 3 the solver or the certificate fails.
Errors are written to stderr as a JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys

from ..frontend import ParseError, ProblemError, load_problem
from ..majorant import NormError, certify_expansion
from ..recurse import ConditionFailure, SolverError, solve_problem
from ..reduce import IndeterminateError, ReductionError, check_condition
from . import report as rep
from .numeric import NumericError, numeric_table
from .sector import parse_sector

EXIT_OK, EXIT_USAGE, EXIT_CONDITION, EXIT_SOLVER = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="powerlog", description="Power-log series solutions of algebraic ODEs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text, to=True, numeric=False):
        s = sub.add_parser(name, help=help_text)
        s.add_argument("problem", help="problem file (JSON)")
        s.add_argument("--depth", type=int, help="truncation depth for the condition check")
        s.add_argument("--out", help="write the JSON document here instead of stdout")
        if to:
            s.add_argument("--to", type=int, help="expand through x^N (default: expand_to)")
            s.add_argument("--exact-bounds", action="store_true", help="use the exact pole bound")
        if numeric:
            s.add_argument("--sector", help="RADIUS,OPENING_DEG,BISECTOR_DEG")
            s.add_argument("--precision", type=int, help="working precision in bits")
            s.add_argument("--csv", help="also write the numeric table as CSV")
        return s

    add("check", "compute m and a_j and decide the leading-term condition", to=False)
    add("reduce", "show the reduced equation", to=False)
    add("expand", "compute the coefficients R_k")
    add("certify", "verify the majorant inequality")
    add("evaluate", "evaluate truncations on a sector grid", numeric=True)
    add("residual", "residuals of truncations on a sector grid", numeric=True)
    r = add("report", "run the whole pipeline", numeric=True)
    r.add_argument("--with-oracles", action="store_true", help="also run the oracle cases")
    return p


def _emit(doc: dict, args) -> None:
    doc = {"schema": rep.SCHEMA, "command": args.command, **doc}
    text = rep.dumps(doc)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(code: int, kind: str, message: str, **extra) -> int:
    err = {"type": kind, "message": message, **extra}
    sys.stderr.write(json.dumps({"schema": rep.SCHEMA, "error": err}, sort_keys=True) + "\n")
    return code


def _points(args, problem):
    if args.sector:
        sector = parse_sector(args.sector)
    elif problem.sector is not None:
        sector = problem.sector
    else:
        raise UsageError("no sector: pass --sector or add one to the problem file")
    return sector, sector.grid()


def _run(args) -> int:
    problem = load_problem(args.problem)
    if args.command == "check":
        report = check_condition(problem, args.depth)
        _emit({"problem": problem.name, **rep.check_json(report)}, args)
        return EXIT_OK if report.holds else EXIT_CONDITION

    N = getattr(args, "to", None)
    N = problem.expand_to if N is None else N
    if N < 0:
        raise UsageError("--to must be nonnegative")
    exact = getattr(args, "exact_bounds", False)
    exp = solve_problem(problem, None if args.command == "reduce" else N, exact, args.depth)
    head = {"problem": problem.name}

    if args.command == "reduce":
        _emit({**head, **rep.reduce_json(exp)}, args)
        return EXIT_OK
    if args.command == "expand":
        _emit({**head, **rep.expand_json(exp, N)}, args)
        return EXIT_OK
    if args.command == "certify":
        if N <= exp.ell:
            raise UsageError(f"--to must exceed l = {exp.ell} to certify anything")
        cert = certify_expansion(exp, N - exp.ell)
        _emit({**head, **rep.certify_json(cert)}, args)
        return EXIT_OK if cert.passed else EXIT_SOLVER

    bits = args.precision or problem.precision_bits
    if bits < 16:
        raise UsageError("--precision must be at least 16 bits")
    sector, points = _points(args, problem)
    head.update(precision_bits=bits, sector=sector.to_json())
    if args.command == "report":
        doc, rows = rep.report_json(exp, N, points, bits, args.with_oracles)
    else:
        orders = range(exp.ell, N + 1) if N >= exp.ell else [N]
        rows = numeric_table(problem.ode, exp.series(N), points, orders, bits)
        doc = {"rows": rep.numeric_json(rows)}
        if args.command == "evaluate":
            for d in doc["rows"]:
                del d["residual_abs"]
    if args.csv:
        rep.write_csv(args.csv, rows)
    _emit({**head, **doc}, args)
    return EXIT_OK


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _fail(EXIT_USAGE, "usage", str(exc))
    try:
        return _run(args)
    except UsageError as exc:
        return _fail(EXIT_USAGE, "usage", str(exc))
    except (ProblemError, ParseError) as exc:
        return _fail(EXIT_USAGE, "input", str(exc))
    except OSError as exc:
        return _fail(EXIT_USAGE, "io", str(exc))
    except ConditionFailure as exc:
        return _fail(EXIT_CONDITION, "condition", str(exc), report=rep.check_json(exc.report))
    except IndeterminateError as exc:
        return _fail(EXIT_CONDITION, "condition", str(exc))
    except SolverError as exc:
        return _fail(EXIT_SOLVER, "solver", exc.reason, k=exc.k)
    except (ReductionError, NormError, NumericError) as exc:
        return _fail(EXIT_SOLVER, type(exc).__name__, str(exc))
    except ValueError as exc:
        return _fail(EXIT_USAGE, "input", str(exc))


if __name__ == "__main__":
    sys.exit(main())
