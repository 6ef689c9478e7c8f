"""Exact arithmetic: Laurent polynomials, cyclotomic and finite fields, linear algebra."""

from .cyclotomic import CycloNumber, CyclotomicField, ZeroValue, cyclotomic_field, cyclotomic_norm
from .finite_field import GF, FFElement, FieldError, NoRoot, field, is_prime
from .laurent import V, LaurentPoly, cyclotomic_polynomial, poly_valuation, substitute_square
from .linalg import (
    QQ,
    DimensionMismatch,
    SingularMatrix,
    det,
    det_fraction_free,
    rank,
    rank_and_kernel,
    rational_function_field,
    rref,
    solve,
)
from .ratfunc import RatFunc
from .reconstruct import (
    InconsistentSamples,
    NoReconstruction,
    crt,
    crt_rational_reconstruct,
    interpolate_laurent,
    rational_reconstruct,
)

__all__ = [
    "CycloNumber",
    "CyclotomicField",
    "ZeroValue",
    "cyclotomic_field",
    "cyclotomic_norm",
    "GF",
    "FFElement",
    "FieldError",
    "NoRoot",
    "field",
    "is_prime",
    "V",
    "LaurentPoly",
    "cyclotomic_polynomial",
    "poly_valuation",
    "substitute_square",
    "QQ",
    "DimensionMismatch",
    "SingularMatrix",
    "det",
    "det_fraction_free",
    "rank",
    "rank_and_kernel",
    "rational_function_field",
    "rref",
    "solve",
    "RatFunc",
    "InconsistentSamples",
    "NoReconstruction",
    "crt",
    "crt_rational_reconstruct",
    "interpolate_laurent",
    "rational_reconstruct",
]
