"""Exact scalars, polynomials and linear algebra."""
from .scalars import QQ, QQI, Field, Surd, format_scalar, is_rational, parse_scalar, scalar
from .linalg import (Echelon, Matrix, kernel_basis, matrix_poly, rank, reduce_against, rref,
                     solve, span_dim, split_commutative)
from .poly import factor_poly, krylov_minpoly, roots_or_fail

__all__ = [
    "QQ", "QQI", "Field", "Surd", "format_scalar", "is_rational", "parse_scalar", "scalar",
    "Echelon", "Matrix", "kernel_basis", "matrix_poly", "rank", "reduce_against", "rref",
    "solve", "span_dim", "split_commutative",
    "factor_poly", "krylov_minpoly", "roots_or_fail",
]
