"""Exact ordered-field toolkit: truncated Hahn series over Q, cuts and gaps of
the rationals, continuous pathologies on Q, and coefficientwise limits."""

from .errors import OFLError
from .expr import expression_eval
from .series import (
    Series,
    automorphism_double,
    automorphism_halve,
    char_fn,
    compare,
    format_series,
    invert,
    is_in_subring_R,
    mul,
    parse_series,
    pitteloud_prime,
    sqrt,
)

__version__ = "0.1.0"

__all__ = [
    "OFLError",
    "Series",
    "automorphism_double",
    "automorphism_halve",
    "char_fn",
    "compare",
    "expression_eval",
    "format_series",
    "invert",
    "is_in_subring_R",
    "mul",
    "parse_series",
    "pitteloud_prime",
    "sqrt",
]
