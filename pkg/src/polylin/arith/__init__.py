"""Exact scalar, Laurent-polynomial and matrix arithmetic."""

from .fields import GF, QQ, Fp, PrimeField, RationalField, current_field, parse_field, use_field
from .laurent import (
    LaurentPoly,
    grlex_key,
    laurent_exact_div,
    laurent_gcd,
    laurent_mul,
    laurent_nth_root,
)
from .matrix import ExactMatrix, kernel_basis, rank

__all__ = [
    "GF",
    "QQ",
    "Fp",
    "PrimeField",
    "RationalField",
    "current_field",
    "parse_field",
    "use_field",
    "LaurentPoly",
    "grlex_key",
    "laurent_exact_div",
    "laurent_gcd",
    "laurent_mul",
    "laurent_nth_root",
    "ExactMatrix",
    "kernel_basis",
    "rank",
]
