"""Lyapunov constants at weak foci of the model, exact and symbolic."""
from .focal import (LyapunovConstants, ShiftedSystem, SymbolicAlphaBeta, SymbolicParams,
                    focal_constants, shift_to_origin)
from .reference import alpha_beta_traces, reference_constants, zero_trace_s
from .symbolic import (AppendixCheck, appendix_check, outer_focus_constants,
                       unit_focus_basis, weak_focus_constants)

__all__ = [
    "LyapunovConstants", "ShiftedSystem", "SymbolicAlphaBeta", "SymbolicParams",
    "focal_constants", "shift_to_origin", "reference_constants", "alpha_beta_traces",
    "zero_trace_s", "AppendixCheck", "appendix_check", "outer_focus_constants",
    "unit_focus_basis", "weak_focus_constants",
]
