"""Exact rational arithmetic, graded spaces, signs and linear algebra."""

from .graded import GradedSpace
from .linalg import (
    Echelon,
    Vector,
    annihilator,
    axpy,
    quotient_basis,
    rank,
    rank_kernel,
    solve_in_basis,
    span_rank,
)
from .matrix import SignedMatrix, block_diagonal
from .scalars import ONE, ZERO, Rational, format_rational, to_rational
from .signs import koszul_sign, permutation_sign, shuffle_sign, sort_sign

__all__ = [
    "GradedSpace",
    "Echelon",
    "Vector",
    "annihilator",
    "axpy",
    "quotient_basis",
    "rank",
    "rank_kernel",
    "solve_in_basis",
    "span_rank",
    "SignedMatrix",
    "block_diagonal",
    "ONE",
    "ZERO",
    "Rational",
    "format_rational",
    "to_rational",
    "koszul_sign",
    "permutation_sign",
    "shuffle_sign",
    "sort_sign",
]
