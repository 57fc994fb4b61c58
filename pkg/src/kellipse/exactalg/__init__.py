"""Exact arithmetic substrate: Q(i) numbers, sparse polynomials, elimination."""

from .elimination import interpolate, resultant, univariate_coefficients
from .gaussian import GaussianRational, I, as_gaussian, format_rational
from .linalg import bareiss_det, rational_det
from .multipoly import (
    VARS,
    ZERO_DEGREE,
    MultiPoly,
    gens,
    grlex_key,
    homogenize,
    initial_form,
    parse_poly,
    poly_sqrt,
)
from .univariate import UniPoly, complex_roots, newton_interpolate, poly_gcd

__all__ = [
    "GaussianRational",
    "I",
    "MultiPoly",
    "UniPoly",
    "VARS",
    "ZERO_DEGREE",
    "as_gaussian",
    "bareiss_det",
    "complex_roots",
    "format_rational",
    "gens",
    "grlex_key",
    "homogenize",
    "initial_form",
    "interpolate",
    "newton_interpolate",
    "parse_poly",
    "poly_gcd",
    "poly_sqrt",
    "rational_det",
    "resultant",
    "univariate_coefficients",
]
