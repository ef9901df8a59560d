"""Local behaviour of the quintic field at the origin.

The linear part vanishes there, so the picture is read off the lowest-order
terms in polar blow-up: the positive axes are always characteristic
directions, and for ``s > 1`` one more appears at ``theta_s = arctan((s-1)/s)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from ..model import ModelParams

__all__ = ["OriginRegime", "OriginPortrait", "classify_origin"]


class OriginRegime(enum.Enum):
    S_BELOW_ONE = "s<1"
    S_EQUAL_ONE = "s=1"
    S_ABOVE_ONE = "s>1"


_SECTORS = {
    OriginRegime.S_BELOW_ONE: (
        "the positive x-axis is the only orbit leaving the origin (along theta = 0) and the "
        "positive y-axis the only orbit entering it (along theta = pi/2)"),
    OriginRegime.S_EQUAL_ONE: (
        "infinitely many orbits leave the origin along theta = 0; the positive y-axis is the "
        "only orbit entering it"),
    OriginRegime.S_ABOVE_ONE: (
        "infinitely many orbits leave along theta = 0, the positive y-axis is the only orbit "
        "entering, and a unique separatrix leaves along theta_s, splitting the quadrant near "
        "the origin into a hyperbolic and a parabolic sector"),
}


@dataclass(frozen=True)
class OriginPortrait:
    regime: OriginRegime
    theta_s: float | None
    sectors: str

    def to_json_obj(self) -> dict:
        return {"regime": self.regime.value, "theta_s": self.theta_s, "sectors": self.sectors}


def classify_origin(params: ModelParams) -> OriginPortrait:
    s = Fraction(params.s)
    if s < 1:
        regime = OriginRegime.S_BELOW_ONE
    elif s == 1:
        regime = OriginRegime.S_EQUAL_ONE
    else:
        regime = OriginRegime.S_ABOVE_ONE
    theta = math.atan(float((s - 1) / s)) if regime is OriginRegime.S_ABOVE_ONE else None
    return OriginPortrait(regime, theta, _SECTORS[regime])
