"""Exact integer, rational and GF(2) linear algebra."""

from .gf2 import F2Matrix, F2Span, f2_nullspace, f2_rank
from .linalg import SmithForm, rank, rational_nullspace, rref, smith_normal_form
from .matrix import Matrix, Scalar
from .poly import Poly, charpoly, poly_disc, poly_gcd, resultant
from .simplex import LPProblem, LPResult, LPStatus, lp_max

__all__ = [
    "F2Matrix", "F2Span", "f2_nullspace", "f2_rank",
    "SmithForm", "rank", "rational_nullspace", "rref", "smith_normal_form",
    "Matrix", "Scalar",
    "Poly", "charpoly", "poly_disc", "poly_gcd", "resultant",
    "LPProblem", "LPResult", "LPStatus", "lp_max",
]
