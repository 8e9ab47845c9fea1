"""Weighted norms, the radius and constants, and the majorant certificate."""

from .context import (
    NormContext, calD, calL, choose_r, compute_constants, D_op, rebase_monomials, rebase_operator,
)
from .majorant import (
    Certification, MajorantRun, Verdict, build_majorant, certify, certify_expansion, majorant_recursion,
)
from .norm import Interval, NormError, norm, pole_modulus_bound, poly_norm

__all__ = [
    "NormContext", "calD", "calL", "choose_r", "compute_constants", "D_op", "rebase_monomials",
    "rebase_operator", "Certification", "MajorantRun", "Verdict", "build_majorant", "certify",
    "certify_expansion", "majorant_recursion", "Interval", "NormError", "norm", "pole_modulus_bound",
    "poly_norm",
]
