"""Certificates: a claim, a verdict and the replayable evidence behind it."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra import IntervalBox, MultiPoly, QuadSurd, rational_str

__all__ = ["Verdict", "Step", "Certificate", "jsonable"]


class Verdict(enum.Enum):
    VERIFIED = "Verified"
    REFUTED = "Refuted"
    INCONCLUSIVE = "Inconclusive"


def jsonable(value):
    """Plain JSON data; non-integral rationals become ``"p/q"`` strings."""
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, Fraction):
        return rational_str(value)
    if isinstance(value, float):
        return value
    if isinstance(value, (IntervalBox, QuadSurd)):
        return value.to_json_obj()
    if isinstance(value, MultiPoly):
        return str(value)
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


@dataclass
class Step:
    """One exact check. ``passed`` is ``None`` when it could not be decided."""

    case: str
    check: str
    passed: bool | None
    detail: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {"case": self.case, "check": self.check, "passed": self.passed,
                "detail": jsonable(self.detail)}


@dataclass
class Certificate:
    claim: str
    statement: str
    steps: list = field(default_factory=list)

    def add(self, case: str, check: str, passed, **detail) -> bool | None:
        self.steps.append(Step(case, check, None if passed is None else bool(passed), detail))
        return passed

    @property
    def verdict(self) -> Verdict:
        if any(s.passed is False for s in self.steps):
            return Verdict.REFUTED
        if not self.steps or any(s.passed is None for s in self.steps):
            return Verdict.INCONCLUSIVE
        return Verdict.VERIFIED

    @property
    def evidence(self) -> list:
        return sorted(self.steps, key=lambda s: s.case)

    def step(self, case: str, check: str) -> Step:
        for s in self.steps:
            if s.case == case and s.check == check:
                return s
        raise KeyError((case, check))

    def to_json_obj(self) -> dict:
        return {"claim": self.claim, "statement": self.statement,
                "verdict": self.verdict.value,
                "evidence": [s.to_json_obj() for s in self.evidence]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2, sort_keys=True)

    def audit(self) -> str:
        """Human-readable trail, one line per step."""
        mark = {True: "ok  ", False: "FAIL", None: "??  "}
        lines = [f"{self.claim}: {self.statement}"]
        for s in self.evidence:
            lines.append(f"  [{mark[s.passed]}] {s.case}: {s.check}")
            for k, v in s.detail.items():
                text = json.dumps(jsonable(v)) if not isinstance(v, str) else v
                if len(text) > 160:
                    text = text[:157] + "..."
                lines.append(f"         {k} = {text}")
        lines.append(f"verdict: {self.verdict.value}")
        return "\n".join(lines)
