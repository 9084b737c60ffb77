"""rootline: certified max-root approximation from top polynomial coefficients.

The package works over exact rationals throughout.  Floating point appears
only in non-authoritative cross-checks; every reported bound is backed by an
exact rational comparison or a certified interval.
"""

from rootline.poly import ExactPolynomial, SquareMatrixQ, char_poly, sigma_k
from rootline.symfuncs import (
    PowerSumProfile,
    SymmetricProfile,
    elementary_from_power_sums,
    power_sums_from_elementary,
    profile_from_coefficients,
)
from rootline.maxroot import ApproxResult, alpha_factor, approx_max_root, root_sum_test

__all__ = [
    "ExactPolynomial",
    "SquareMatrixQ",
    "char_poly",
    "sigma_k",
    "SymmetricProfile",
    "PowerSumProfile",
    "power_sums_from_elementary",
    "elementary_from_power_sums",
    "profile_from_coefficients",
    "ApproxResult",
    "alpha_factor",
    "approx_max_root",
    "root_sum_test",
]

__version__ = "0.1.0"
