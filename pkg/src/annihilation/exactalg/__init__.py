"""Exact scalars, polynomials, factored rational functions and dense linear algebra."""
from .factored import FactoredRational, FactorProduct, lcm_denominators, reduce
from .linear import LinearForm
from .matrix import UniPoly, bareiss_det, interpolate, interpolate_charpoly, rank
from .poly import Poly, format_rational, make_symbols, parse_rational

__all__ = [
    "FactoredRational",
    "FactorProduct",
    "LinearForm",
    "Poly",
    "UniPoly",
    "bareiss_det",
    "format_rational",
    "interpolate",
    "interpolate_charpoly",
    "lcm_denominators",
    "make_symbols",
    "parse_rational",
    "rank",
    "reduce",
]
