"""Exact tools for weight degenerations of affine rings and toric stability invariants."""

from __future__ import annotations

__version__ = "0.1.0"

from .polyarith import Polynomial, VariableContext, MonomialOrder, GREVLEX, LEX, weighted_order
from .groebner import Ideal, GroebnerBasis, ResourceLimitError, Limits, buchberger, member
from .filtration import WeightSystem, CoWeight, PresentedRing, initial_ideal, wt_value
from .parsing import parse_file, parse_ideal, parse_polynomial

__all__ = [
    "__version__", "Polynomial", "VariableContext", "MonomialOrder", "GREVLEX", "LEX",
    "weighted_order", "Ideal", "GroebnerBasis", "ResourceLimitError", "Limits", "buchberger",
    "member", "WeightSystem", "CoWeight", "PresentedRing", "initial_ideal", "wt_value",
    "parse_file", "parse_ideal", "parse_polynomial",
]
