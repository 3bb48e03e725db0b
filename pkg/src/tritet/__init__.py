"""Exact tools for Diophantine equations in triangular and tetrahedral numbers."""
from .families import (
    SolutionRecord,
    check_identity,
    generate,
    generate_range,
    list_families,
    verify,
)
from .figurate import (
    digits,
    iroot,
    is_kth_power,
    is_palindrome,
    is_square,
    isqrt,
    tet,
    tet_index,
    tri,
    tri_index,
)
from .polyring import MultiPoly, RatFunc, parse_poly, poly_vars, resultant, uni_gcd
from .search import SearchProblem, SearchReport, run_partitioned

__version__ = "0.1.0"

__all__ = [
    "MultiPoly", "RatFunc", "SearchProblem", "SearchReport", "SolutionRecord",
    "check_identity", "digits", "generate", "generate_range", "iroot", "is_kth_power",
    "is_palindrome", "is_square", "isqrt", "list_families", "parse_poly", "poly_vars",
    "resultant", "run_partitioned", "tet", "tet_index", "tri", "tri_index", "uni_gcd", "verify",
]
