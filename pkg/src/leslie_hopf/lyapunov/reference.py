"""Closed-form Lyapunov constants, used as an oracle for :func:`focal_constants`.

These are normalised with the coupling coefficient ``a01`` scaled out of the
linear part; :meth:`LyapunovConstants.in_coupling_units` converts computed
constants to the same units.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import RegimeError
from ..model import AlphaBetaParams, ModelParams
from . import reference_data as data
from .focal import LyapunovConstants

__all__ = ["reference_constants", "alpha_beta_traces", "zero_trace_s", "WHICH"]

WHICH = ("unique_eq", "first_eq", "third_eq")

_NOTE = "closed form; v measured in units of the coupling coefficient a01"


def alpha_beta_traces(alpha, beta, s):
    """Jacobian traces of the alpha-beta field at ``(1, 1)`` and ``(beta, beta)``."""
    first = (2 * alpha ** 2 + 3 * alpha * beta + 2 * beta ** 2 + alpha + beta - 1
             - (alpha + 1) * (beta + 1) * (alpha + beta + 1) * s)
    third = (beta ** 3 * (2 * alpha ** 2 + alpha * beta - beta ** 2 + 3 * alpha + beta + 2)
             - beta ** 2 * (beta + 1) * (alpha + beta) * (alpha + beta + 1) * s)
    return first, third


def zero_trace_s(alpha, beta, which: str):
    """The ``s`` making the trace at the first or third equilibrium vanish."""
    if which == "first_eq":
        return Fraction(2 * alpha ** 2 + 3 * alpha * beta + 2 * beta ** 2 + alpha + beta - 1) \
            / ((alpha + 1) * (beta + 1) * (alpha + beta + 1))
    if which == "third_eq":
        return Fraction(beta * (2 * alpha ** 2 + alpha * beta - beta ** 2 + 3 * alpha + beta + 2)) \
            / ((beta + 1) * (alpha + beta) * (alpha + beta + 1))
    raise ValueError(f"which must be 'first_eq' or 'third_eq', got {which!r}")


def _unique(params: ModelParams) -> LyapunovConstants:
    K, b, s = params.K, params.b, params.s
    w, t = K * b - K + 2, 2 * K - b - 3
    if not (w > 0 and t > 0):
        raise RegimeError("need K b - K + 2 > 0 and 2K - b - 3 > 0")
    if s != t / (K * (b + 1)):
        raise RegimeError("s is not the trace zero of the unit equilibrium")
    point = {"K": K, "b": b}
    u1 = Fraction(data.upsilon1().evaluate(point))
    u2 = Fraction(data.upsilon2().evaluate(point))
    V3 = (K - 1) ** 2 * u1 / (4 * w)
    V5 = -(K - 1) ** 3 * u2 / (48 * w ** 3 * t)
    return LyapunovConstants(Fraction(0), V3, V5, V5 if V3 == 0 else None, None, _NOTE,
                             coupling=Fraction(1))


def _outer(params: AlphaBetaParams, which: str) -> LyapunovConstants:
    alpha, beta, s = params.alpha, params.beta, params.s
    if s != zero_trace_s(alpha, beta, which):
        raise RegimeError(f"s does not zero the trace at the {which.split('_')[0]} equilibrium")
    point = {"alpha": alpha, "beta": beta}
    if which == "first_eq":
        V3 = (alpha + beta) ** 2 * Fraction(data.f1().evaluate(point)) \
            / (4 * (alpha - 1) * (beta - 1))
    else:
        V3 = (alpha + 1) ** 2 * beta ** 5 * Fraction(data.g1().evaluate(point)) \
            / (4 * (beta - 1) * (beta - alpha))
    return LyapunovConstants(Fraction(0), V3, None, None, None, _NOTE, coupling=Fraction(1))


def reference_constants(params, which: str = "unique_eq") -> LyapunovConstants:
    """Closed-form ``V1 = 0``, ``V3`` (and ``V5`` for the unique equilibrium).

    ``unique_eq`` needs :class:`ModelParams` with ``Kb - K + 2 > 0``,
    ``2K - b - 3 > 0`` and ``s`` at the trace zero. ``first_eq`` and
    ``third_eq`` need :class:`AlphaBetaParams` whose ``s`` zeroes the trace
    at ``(1, 1)`` or ``(beta, beta)``. Anything else raises ``RegimeError``.
    """
    if which not in WHICH:
        raise ValueError(f"which must be one of {WHICH}, got {which!r}")
    if which == "unique_eq":
        if isinstance(params, AlphaBetaParams):
            params = params.to_model()
        if not isinstance(params, ModelParams):
            raise RegimeError("unique_eq needs ModelParams")
        return _unique(params)
    if not isinstance(params, AlphaBetaParams):
        raise RegimeError(f"{which} needs AlphaBetaParams")
    return _outer(params, which)
