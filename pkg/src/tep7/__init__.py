"""Exact construction and verification of quartic parametric ideal solutions
of the degree-7 Tarry-Escott problem."""

from .poly import Poly, parse, to_text
from .tep_model import (
    SolutionFamily,
    TepInstance,
    builtin_family,
    builtin_families,
    canonicalize,
    instantiate,
    verify_family,
)

__version__ = "0.1.0"

__all__ = [
    "Poly",
    "SolutionFamily",
    "TepInstance",
    "builtin_families",
    "builtin_family",
    "canonicalize",
    "instantiate",
    "parse",
    "to_text",
    "verify_family",
]
