"""JSON problem files."""

from __future__ import annotations

import json
from pathlib import Path

from ..evalcli.sector import SectorSpec
from .model import Problem
from .parser import ParseError, parse_ode, parse_ratfunc

__all__ = ["ProblemError", "load_problem", "problem_from_dict"]

_KNOWN = {"order", "equation", "seed", "expand_to", "check_depth", "precision_bits", "sector",
          "name", "notes", "expected"}


class ProblemError(ValueError):
    """A problem file is missing fields or holds malformed values."""


def _int_field(d, key, default=None, minimum=0):
    if key not in d:
        if default is None:
            raise ProblemError(f"missing field {key!r}")
        return default
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ProblemError(f"field {key!r} must be an integer")
    if v < minimum:
        raise ProblemError(f"field {key!r} must be at least {minimum}")
    return v


def problem_from_dict(d: dict, name: str = "") -> Problem:
    if not isinstance(d, dict):
        raise ProblemError("problem must be a JSON object")
    unknown = set(d) - _KNOWN
    if unknown:
        raise ProblemError(f"unknown fields: {', '.join(sorted(unknown))}")
    order = _int_field(d, "order")
    if "equation" not in d or not isinstance(d["equation"], str):
        raise ProblemError("missing field 'equation'")
    try:
        ode = parse_ode(d["equation"], order)
    except ParseError as exc:
        raise ProblemError(f"equation: {exc}") from exc
    except ValueError as exc:
        raise ProblemError(f"equation: {exc}") from exc

    if "seed" not in d or not isinstance(d["seed"], list):
        raise ProblemError("missing field 'seed'")
    seen = {}
    for i, entry in enumerate(d["seed"]):
        if not isinstance(entry, dict) or "k" not in entry or "value" not in entry:
            raise ProblemError(f"seed[{i}] must be an object with 'k' and 'value'")
        k = entry["k"]
        if isinstance(k, bool) or not isinstance(k, int) or k < 0:
            raise ProblemError(f"seed[{i}].k must be a nonnegative integer")
        if k in seen:
            raise ProblemError(f"duplicate seed exponent k={k}")
        if not isinstance(entry["value"], str):
            raise ProblemError(f"seed[{i}].value must be a string")
        try:
            seen[k] = parse_ratfunc(entry["value"])
        except (ParseError, ZeroDivisionError) as exc:
            raise ProblemError(f"seed[{i}].value: {exc}") from exc
    seed = tuple(sorted(seen.items()))

    expand_to = _int_field(d, "expand_to")
    check_depth = _int_field(d, "check_depth", default=2 * order + 4)
    bits = _int_field(d, "precision_bits", default=128, minimum=16)

    sector = None
    if "sector" in d:
        s = d["sector"]
        if not isinstance(s, dict):
            raise ProblemError("field 'sector' must be an object")
        try:
            sector = SectorSpec(float(s["radius"]), float(s["opening_deg"]), float(s.get("bisector_deg", 0.0)))
        except KeyError as exc:
            raise ProblemError(f"sector is missing {exc.args[0]!r}") from exc
        except (TypeError, ValueError) as exc:
            raise ProblemError(f"sector: {exc}") from exc

    meta = {k: d[k] for k in ("notes", "expected") if k in d}
    return Problem(ode, seed, expand_to, check_depth, bits, sector, d.get("name", name), meta)


def load_problem(path) -> Problem:
    """Read and validate a problem file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ProblemError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from exc
    return problem_from_dict(data, path.stem)
