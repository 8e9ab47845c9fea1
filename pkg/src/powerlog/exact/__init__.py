"""Exact arithmetic over Q(i): scalars, polynomials, rational functions, linear systems."""

from .linalg import LinearSolution, solve_linear_system, solve_sparse
from .poly import (
    Poly,
    cauchy_bound,
    format_poly,
    integer_roots,
    poly_gcd,
    rational_roots,
    squarefree_part,
)
from .ratfunc import RatFunc, format_ratfunc, laurent_at_infinity, ratfunc_normalize
from .scalars import (
    QQ,
    GaussianRational,
    format_scalar,
    gauss,
    modulus_bounds,
    modulus_upper,
    parse_scalar,
    sqrt_bounds,
    to_scalar,
)

__all__ = [
    "QQ",
    "GaussianRational",
    "LinearSolution",
    "Poly",
    "RatFunc",
    "cauchy_bound",
    "format_poly",
    "format_ratfunc",
    "format_scalar",
    "gauss",
    "integer_roots",
    "laurent_at_infinity",
    "modulus_bounds",
    "modulus_upper",
    "parse_scalar",
    "poly_gcd",
    "rational_roots",
    "ratfunc_normalize",
    "solve_linear_system",
    "solve_sparse",
    "sqrt_bounds",
    "squarefree_part",
    "to_scalar",
]
