"""Exact psi-class intersection numbers, their n-point functions, and identity checks."""
from .exactmath import Rational, bernoulli, double_factorial, format_rational, parse_rational
from .npoint import (
    InvariantViolation,
    NPointTable,
    TauSpec,
    UnstableError,
    default_table,
    f_poly,
    g_poly_normalized,
    g_poly_recursive,
    tau,
)
from .polynomial import DivisibilityError, MultiPoly
from .report import VerificationReport

__version__ = "0.1.0"

__all__ = [
    "Rational",
    "bernoulli",
    "double_factorial",
    "format_rational",
    "parse_rational",
    "InvariantViolation",
    "NPointTable",
    "TauSpec",
    "UnstableError",
    "default_table",
    "f_poly",
    "g_poly_normalized",
    "g_poly_recursive",
    "tau",
    "DivisibilityError",
    "MultiPoly",
    "VerificationReport",
]
