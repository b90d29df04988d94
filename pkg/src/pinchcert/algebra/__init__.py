"""Exact rational-coefficient algebra in the fixed variable set."""

from .parse import ParseError, parse_poly, parse_rf, poly_to_text, rf_to_text
from .poly import NVARS, VARIABLES, ExactDivisionError, Poly, exact_div, poly_gcd
from .ratfunc import RationalFunc

__all__ = [
    "NVARS",
    "VARIABLES",
    "ExactDivisionError",
    "ParseError",
    "Poly",
    "RationalFunc",
    "exact_div",
    "parse_poly",
    "parse_rf",
    "poly_gcd",
    "poly_to_text",
    "rf_to_text",
]
