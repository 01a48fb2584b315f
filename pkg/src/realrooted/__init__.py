"""Certify that a univariate polynomial has only distinct real roots."""

from .poly import Polynomial, parse_poly, format_poly

__version__ = "0.1.0"

__all__ = ["Polynomial", "parse_poly", "format_poly", "__version__"]
