"""Symbolic Lyapunov constants in the model parameters.

The unit equilibrium is handled with ``s`` eliminated through its trace zero
``s = (2K - b - 3)/(K (b + 1))``; every denominator that appears is a power
product of ``K``, ``K - 1``, ``b + 1``, ``T = 2K - b - 3`` and
``W = Kb - K + 2``, so the whole run stays inside :class:`LaurentPoly`.
The outer equilibria of the alpha-beta family are treated the same way over
a basis of linear and quadratic factors in ``(alpha, beta)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..algebra import FactorBasis, LaurentPoly, MultiPoly, parse
from . import reference_data as data
from .focal import (LyapunovConstants, SymbolicAlphaBeta, SymbolicParams, focal_constants,
                    shift_to_origin)

__all__ = ["unit_focus_basis", "alpha_beta_basis", "weak_focus_constants",
           "outer_focus_constants", "AppendixCheck", "appendix_check"]

_KB = ("K", "b")
_AB = ("alpha", "beta")


@lru_cache(maxsize=None)
def unit_focus_basis() -> FactorBasis:
    texts = ["K", "K-1", "b+1", "2*K-b-3", "K*b-K+2"]
    return FactorBasis([parse(t, _KB) for t in texts], ["K", "K-1", "b+1", "T", "W"])


@lru_cache(maxsize=None)
def alpha_beta_basis() -> FactorBasis:
    texts = ["alpha", "beta", "alpha+1", "beta+1", "alpha+beta+1", "alpha-1", "beta-1",
             "beta-alpha", "alpha+beta",
             "2*alpha^2+3*alpha*beta+2*beta^2+alpha+beta-1",
             "2*alpha^2+alpha*beta-beta^2+3*alpha+beta+2"]
    names = ["alpha", "beta", "alpha+1", "beta+1", "K", "alpha-1", "beta-1", "beta-alpha",
             "alpha+beta", "N1", "N3"]
    return FactorBasis([parse(t, _AB) for t in texts], names)


def weak_focus_constants(order: int = 2) -> LyapunovConstants:
    """``V1, V3, V5`` at ``(1, 1)`` as functions of ``(K, b)`` with ``s = s*``."""
    basis = unit_focus_basis()
    K = basis.lift(MultiPoly.var("K", _KB))
    b = basis.lift(MultiPoly.var("b", _KB))
    s = basis.monomial((-1, 0, -1, 1, 0))
    return focal_constants(shift_to_origin(SymbolicParams(K, b, s)), order=order)


def outer_focus_constants(which: str) -> LyapunovConstants:
    """``V3`` at ``(1, 1)`` (``first_eq``) or ``(beta, beta)`` (``third_eq``)
    of the alpha-beta field, with ``s`` at the matching trace zero."""
    basis = alpha_beta_basis()
    alpha = basis.lift(MultiPoly.var("alpha", _AB))
    beta = basis.lift(MultiPoly.var("beta", _AB))
    if which == "first_eq":
        s, center = basis.monomial((0, 0, -1, -1, -1, 0, 0, 0, 0, 1, 0)), (1, 1)
    elif which == "third_eq":
        s, center = basis.monomial((0, 1, 0, -1, -1, 0, 0, 0, -1, 0, 1)), (beta, beta)
    else:
        raise ValueError(f"which must be 'first_eq' or 'third_eq', got {which!r}")
    shifted = shift_to_origin(SymbolicAlphaBeta(alpha, beta, s), eq=center)
    return focal_constants(shifted, order=1)


@dataclass(frozen=True)
class AppendixCheck:
    """Computed constants against the embedded closed forms.

    ``v3_difference`` is zero when the third constants agree exactly.
    ``v5_multiplier`` is ``c`` in ``V5 - V5_closed = c * upsilon1 * (...)``:
    fifth constants are only defined modulo the third, so agreement means
    the difference is a multiple of ``upsilon1``.
    """

    v3_computed: LaurentPoly
    v3_difference: LaurentPoly
    v5_computed: LaurentPoly | None
    v5_difference: LaurentPoly | None
    v5_multiplier: MultiPoly | None

    @property
    def v3_agrees(self) -> bool:
        return self.v3_difference.is_zero()

    @property
    def v5_agrees(self) -> bool:
        return self.v5_difference is None or self.v5_multiplier is not None

    @property
    def agrees(self) -> bool:
        return self.v3_agrees and self.v5_agrees

    def report(self) -> str:
        lines = ["V3 (coupling units): " + str(self.v3_computed),
                 "V3 - (K-1)^2 upsilon1/(4W): " + str(self.v3_difference),
                 "upsilon1 " + ("matches" if self.v3_agrees else "DIFFERS")]
        if self.v5_difference is not None:
            lines.append("V5 - closed form = upsilon1 * ("
                         + (str(self.v5_multiplier) if self.v5_agrees else "?")
                         + ") * " + _denominator(self.v5_difference))
            lines.append("upsilon2 " + ("matches modulo upsilon1" if self.v5_agrees
                                        else "DIFFERS modulo upsilon1"))
        return "\n".join(lines)


def _denominator(lp: LaurentPoly) -> str:
    parts = [f"({n})^{e}" for n, e in zip(lp.basis.names, lp.exps) if e]
    return "*".join(parts) or "1"


def appendix_check(order: int = 2, upsilon1=None, upsilon2=None) -> AppendixCheck:
    """Recompute the unit-equilibrium constants and diff them against
    ``upsilon1`` / ``upsilon2`` (the embedded ones unless overridden)."""
    basis = unit_focus_basis()
    u1 = data.upsilon1() if upsilon1 is None else upsilon1.with_variables(_KB)
    lc = weak_focus_constants(order).in_coupling_units()
    closed3 = basis.monomial((0, 2, 0, 0, -1), Fraction(1, 4)) * u1
    d3 = (lc.V3 - closed3).extract()
    if order < 2:
        return AppendixCheck(lc.V3, d3, None, None, None)
    u2 = data.upsilon2() if upsilon2 is None else upsilon2.with_variables(_KB)
    closed5 = basis.monomial((0, 3, 0, -1, -3), Fraction(-1, 48)) * u2
    d5 = (lc.V5 - closed5).extract()
    try:
        multiplier = d5.num.divide_exact(u1)
    except ArithmeticError:
        multiplier = None
    return AppendixCheck(lc.V3, d3, lc.V5, d5, multiplier)
