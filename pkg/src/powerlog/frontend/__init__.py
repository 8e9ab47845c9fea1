"""Parsing of equations, rational functions and problem files."""

from .model import AlgebraicODE, DeltaPolynomial, Problem, format_delta_poly
from .parser import ParseError, parse_delta_poly, parse_expression, parse_ode, parse_poly, parse_ratfunc
from .problem import ProblemError, load_problem, problem_from_dict

__all__ = [
    "AlgebraicODE", "DeltaPolynomial", "Problem", "format_delta_poly",
    "ParseError", "parse_delta_poly", "parse_expression", "parse_ode", "parse_poly", "parse_ratfunc",
    "ProblemError", "load_problem", "problem_from_dict",
]
