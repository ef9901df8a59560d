"""Sufficient conditions for global stability of the unit equilibrium.

Two routes are tried in order. The quadratic-isocline route asks that
``Q(x) = -x^2 + (K-1)x + K - b - 1`` be negative on ``(0, K)`` away from
``x = 1``, which makes a Lyapunov function decrease everywhere. The Dulac
route, available once the equilibrium is unique (``4Kb > (K-1)^2``), asks that
``P(x) = 3x^3 + K(s-2)x^2 + bx + Kbs`` stay non-negative on ``(0, K)``: then
``B = 1/(p(x) y^2)`` is a Dulac function and no closed orbit exists.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra import MultiPoly, QuadSurd, sturm_count
from ..errors import RegimeError
from ..model import ModelParams

__all__ = ["StabilityCondition", "StabilityRegime", "global_stability_certificate",
           "b1_star", "b2_star", "dulac_polynomial", "dulac_divergence", "dulac_grid_check",
           "lyapunov_derivative", "lyapunov_grid_check", "threshold_ordering_samples"]


class StabilityCondition(enum.Enum):
    QUADRATIC_ISOCLINE = "quadratic-isocline"
    DULAC_LARGE_S = "dulac-s-at-least-2"
    DULAC_LARGE_B = "dulac-b-above-threshold"
    NONE = "none"


@dataclass(frozen=True)
class StabilityRegime:
    condition: StabilityCondition
    b1_star: Fraction
    b2_star: QuadSurd
    evidence: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.condition is not StabilityCondition.NONE

    def to_json_obj(self) -> dict:
        from .certificate import jsonable
        return {"condition": self.condition.value, "b1_star": jsonable(self.b1_star),
                "b2_star": jsonable(self.b2_star), "evidence": jsonable(self.evidence)}


def b1_star(K, s) -> Fraction:
    """``K^2 (2-s)^3 / (108 s + 27)``."""
    K, s = Fraction(K), Fraction(s)
    return K ** 2 * (2 - s) ** 3 / (108 * s + 27)


def b2_star(K, s) -> QuadSurd:
    """Positive root in ``b`` of ``3b^2 + chi1 b + chi0``."""
    K, s = Fraction(K), Fraction(s)
    k2 = K ** 2
    return QuadSurd(-k2 * (47 * s ** 2 + 28 * s - 1) / 6, k2 / 6, (s + 1) * (13 * s + 1) ** 3)


def dulac_polynomial(params: ModelParams) -> MultiPoly:
    """``P(x) = 3x^3 + K(s-2)x^2 + bx + Kbs``."""
    K, b, s = params.K, params.b, params.s
    return MultiPoly.from_dense([K * b * s, b, K * (s - 2), 3], "x")


def _p_response(params: ModelParams, x):
    K, b = params.K, params.b
    return (K - 1) * (b + 1) * x / (K * (x * x + b))


def dulac_divergence(params: ModelParams, x, y):
    """Divergence of ``B f`` for the rational field with ``B = 1/(p(x) y^2)``:
    ``-B P(x) / (K (x^2 + b))``."""
    x, y = Fraction(x), Fraction(y)
    K, b, s = params.K, params.b, params.s
    P = 3 * x ** 3 + K * (s - 2) * x ** 2 + b * x + K * b * s
    B = 1 / (_p_response(params, x) * y * y)
    return -B * P / (K * (x * x + b))


def lyapunov_derivative(params: ModelParams, x, y):
    """``[(x-1)(h(x)-1) - (y-1)^2]/x`` with ``h(x) = x (K-x) / (K p(x))``."""
    x, y = Fraction(x), Fraction(y)
    K = params.K
    h = x * (K - x) / (K * _p_response(params, x))
    return ((x - 1) * (h - 1) - (y - 1) ** 2) / x


def _grid(K, n):
    return [K * i / (n + 1) for i in range(1, n + 1)]


def dulac_grid_check(params: ModelParams, n: int = 100) -> dict:
    """Largest Dulac divergence over an ``n x n`` exact grid on ``(0, K)^2``."""
    xs = _grid(params.K, n)
    worst = max(dulac_divergence(params, x, y) for x in xs for y in xs)
    return {"points": n * n, "max": worst, "nonpositive": worst <= 0}


def lyapunov_grid_check(params: ModelParams, n: int = 200) -> dict:
    """Largest Lyapunov derivative over an ``n x n`` exact grid on ``(0, K)^2``."""
    xs = _grid(params.K, n)
    worst = max(lyapunov_derivative(params, x, y) for x in xs for y in xs)
    return {"points": n * n, "max": worst, "nonpositive": worst <= 0}


def _quadratic_isocline(K, b) -> tuple[bool, dict]:
    """``Q < 0`` on ``(0, K)`` minus ``{1}``; the vertex ``(K-1)/2`` is always inside."""
    disc = (K - 1) * (K + 3) - 4 * b
    if disc < 0:
        return True, {"discriminant": disc}
    double_root_at_one = disc == 0 and (K - 1) / 2 == 1
    return double_root_at_one, {"discriminant": disc, "double_root_at_one": double_root_at_one}


def global_stability_certificate(params: ModelParams) -> StabilityRegime:
    """The first sufficient condition that holds, or ``NONE`` with the thresholds.

    Raises :class:`RegimeError` when the quadratic route fails and
    ``4Kb <= (K-1)^2`` (more than one positive equilibrium is possible), since
    the Dulac route assumes uniqueness.
    """
    K, b, s = params.K, params.b, params.s
    lo, hi = b1_star(K, s), b2_star(K, s)
    ok, detail = _quadratic_isocline(K, b)
    evidence = {"quadratic_isocline": detail}
    if ok:
        return StabilityRegime(StabilityCondition.QUADRATIC_ISOCLINE, lo, hi, evidence)
    if not 4 * K * b > (K - 1) ** 2:
        raise RegimeError("the Dulac conditions need 4Kb > (K-1)^2 (a unique equilibrium)")

    P = dulac_polynomial(params)
    # independent cross-check: P has no sign change on (0, K)
    evidence["dulac_roots_in_(0,K)"] = sturm_count(P, (0, K))
    if s >= 2:
        return StabilityRegime(StabilityCondition.DULAC_LARGE_S, lo, hi, evidence)
    D = K ** 2 * (2 - s) ** 2 - 9 * b
    chi1 = K ** 2 * (47 * s ** 2 + 28 * s - 1)
    chi0 = K ** 4 * s * (s - 2) ** 3
    quad = 3 * b ** 2 + chi1 * b + chi0
    evidence.update({"D": D, "3b^2+chi1 b+chi0": quad, "b_above_b1_star": b > lo})
    if D <= 0 or (quad >= 0 and b > lo):
        return StabilityRegime(StabilityCondition.DULAC_LARGE_B, lo, hi, evidence)
    return StabilityRegime(StabilityCondition.NONE, lo, hi, evidence)


def threshold_ordering_samples(n_s: int = 40, n_k: int = 40) -> dict:
    """Check ``K^2 (2-s)^2 / 9 > b2* > b1*`` on an exact grid over
    ``0 < s < 2``, ``1 < K <= 20``. Sampled evidence, not a proof."""
    failures = []
    count = 0
    for i in range(1, n_s + 1):
        s = Fraction(2 * i, n_s + 1)
        for j in range(1, n_k + 1):
            K = 1 + Fraction(19 * j, n_k)
            top = K ** 2 * (2 - s) ** 2 / 9
            mid, low = b2_star(K, s), b1_star(K, s)
            count += 1
            if not (mid < top and mid > low):
                failures.append((K, s))
    return {"samples": count, "holds": not failures, "failures": failures, "kind": "sampled"}
