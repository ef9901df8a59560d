"""Exact computer-algebra kernel."""
from .poly import MultiPoly, parse, rational_str, symbols, to_rational
from .elimination import pseudo_divide, resultant
from .intervals import IntervalBox, Sign, bounds_on_box, decide_sign, range_on_box, sign_on_box
from .surd import QuadSurd
from .laurent import FactorBasis, LaurentPoly
from .sturm import SturmSequence, isolate_roots, refine_root, sturm_count
from .system import isolate_system

__all__ = [
    "MultiPoly", "parse", "rational_str", "symbols", "to_rational",
    "pseudo_divide", "resultant",
    "IntervalBox", "Sign", "bounds_on_box", "decide_sign", "range_on_box", "sign_on_box",
    "QuadSurd", "FactorBasis", "LaurentPoly",
    "SturmSequence", "isolate_roots", "refine_root", "sturm_count",
    "isolate_system",
]
