"""Boxes with rational endpoints and exact sign decisions on them."""
from __future__ import annotations

import enum
from fractions import Fraction
from math import comb

from ..errors import DomainError, Inconclusive
from .poly import MultiPoly, rational_str, to_rational

__all__ = ["IntervalBox", "Sign", "sign_on_box", "bounds_on_box", "range_on_box",
           "decide_sign", "taylor_shift"]

DEFAULT_BUDGET = 64


class Sign(enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    UNDETERMINED = "Undetermined"


class IntervalBox:
    """A product of closed intervals with rational endpoints, one per variable."""

    __slots__ = ("_bounds",)

    def __init__(self, bounds):
        items = bounds.items() if isinstance(bounds, dict) else bounds
        clean = []
        for var, (lo, hi) in items:
            lo, hi = Fraction(to_rational(lo)), Fraction(to_rational(hi))
            if lo > hi:
                raise ValueError(f"empty interval for {var}: [{lo}, {hi}]")
            clean.append((var, (lo, hi)))
        self._bounds = tuple(clean)

    @classmethod
    def interval(cls, lo, hi, var="x") -> "IntervalBox":
        return cls([(var, (lo, hi))])

    @property
    def variables(self) -> tuple:
        return tuple(v for v, _ in self._bounds)

    def __getitem__(self, var):
        for v, b in self._bounds:
            if v == var:
                return b
        raise KeyError(var)

    def items(self):
        return self._bounds

    def lower(self) -> dict:
        return {v: lo for v, (lo, _) in self._bounds}

    def upper(self) -> dict:
        return {v: hi for v, (_, hi) in self._bounds}

    def center(self) -> dict:
        return {v: (lo + hi) / 2 for v, (lo, hi) in self._bounds}

    def widths(self) -> dict:
        return {v: hi - lo for v, (lo, hi) in self._bounds}

    def width(self) -> Fraction:
        return max((hi - lo for _, (lo, hi) in self._bounds), default=Fraction(0))

    def contains(self, point: dict) -> bool:
        return all(lo <= Fraction(to_rational(point[v])) <= hi for v, (lo, hi) in self._bounds)

    def contains_float(self, point: dict, slack: float = 0.0) -> bool:
        return all(float(lo) - slack <= point[v] <= float(hi) + slack for v, (lo, hi) in self._bounds)

    def inside(self, other: "IntervalBox") -> bool:
        """True when this box is a subset of ``other``."""
        return all(other[v][0] <= lo and hi <= other[v][1] for v, (lo, hi) in self._bounds)

    def overlaps(self, other: "IntervalBox") -> bool:
        return all(lo <= other[v][1] and other[v][0] <= hi for v, (lo, hi) in self._bounds)

    def replace(self, var, lo, hi) -> "IntervalBox":
        return IntervalBox([(v, (lo, hi) if v == var else b) for v, b in self._bounds])

    def bisect(self, var=None):
        """Split across ``var`` (default: the widest side) at its midpoint."""
        if var is None:
            var = max(self._bounds, key=lambda vb: vb[1][1] - vb[1][0])[0]
        lo, hi = self[var]
        mid = (lo + hi) / 2
        return self.replace(var, lo, mid), self.replace(var, mid, hi)

    def __eq__(self, other):
        return isinstance(other, IntervalBox) and dict(self._bounds) == dict(other._bounds)

    def __hash__(self):
        return hash(frozenset(self._bounds))

    def __repr__(self):
        inner = ", ".join(f"{v}: [{lo}, {hi}]" for v, (lo, hi) in self._bounds)
        return f"IntervalBox({inner})"

    def to_json_obj(self) -> dict:
        return {v: [rational_str(lo), rational_str(hi)] for v, (lo, hi) in self._bounds}

    @classmethod
    def from_json_obj(cls, data) -> "IntervalBox":
        return cls([(v, (lo, hi)) for v, (lo, hi) in data.items()])


def _split_signs(f: MultiPoly):
    pos = MultiPoly._raw(f.variables, {e: c for e, c in f._terms.items() if c > 0})
    neg = MultiPoly._raw(f.variables, {e: c for e, c in f._terms.items() if c < 0})
    return pos, neg


def bounds_on_box(f: MultiPoly, box: IntervalBox):
    """Lower and upper bounds of ``f`` on a box in the open positive orthant.

    On such boxes the positive-coefficient part is increasing and the
    negative-coefficient part decreasing in every variable, so the extreme
    corners bound the range.
    """
    for v in f.free_variables():
        try:
            lo, _ = box[v]
        except KeyError:
            raise DomainError(f"box does not bound variable {v}") from None
        if lo <= 0:
            raise DomainError(f"box is not in the positive orthant ({v} >= {lo})")
    pos, neg = _split_signs(f)
    lower, upper = box.lower(), box.upper()
    return (pos.evaluate(lower) + neg.evaluate(upper),
            pos.evaluate(upper) + neg.evaluate(lower))


def sign_on_box(f: MultiPoly, box: IntervalBox) -> Sign:
    """Decide the sign of ``f`` on ``box`` by the monotone split, or report
    :attr:`Sign.UNDETERMINED` for the caller to refine."""
    lo, hi = bounds_on_box(f, box)
    if lo > 0:
        return Sign.POSITIVE
    if hi < 0:
        return Sign.NEGATIVE
    return Sign.UNDETERMINED


def taylor_shift(f: MultiPoly, center: dict) -> MultiPoly:
    """Coefficients of ``t -> f(center + t)`` (same variable names)."""
    vars_ = f.variables
    cs = [Fraction(to_rational(center.get(v, 0))) for v in vars_]
    out = {}
    for exps, c in f._terms.items():
        # expand prod (c_i + t_i)^e_i
        partial = {(): Fraction(c)}
        for ci, e in zip(cs, exps):
            nxt = {}
            if e == 0 or ci == 0:
                for k, val in partial.items():
                    nxt[k + (e,)] = val
            else:
                pw = [ci ** (e - j) * comb(e, j) for j in range(e + 1)]
                for k, val in partial.items():
                    for j in range(e + 1):
                        nxt[k + (j,)] = val * pw[j]
            partial = nxt
        for k, val in partial.items():
            out[k] = out.get(k, 0) + val
    return MultiPoly(out, vars_)


def range_on_box(f: MultiPoly, box: IntervalBox):
    """Enclosure ``(lo, hi)`` of ``f`` on any box via the centered Taylor form."""
    center = box.center()
    radii = {v: r / 2 for v, r in box.widths().items()}
    shifted = taylor_shift(f, center)
    const = 0
    spread = Fraction(0)
    rad = [radii.get(v, Fraction(0)) for v in shifted.variables]
    for exps, c in shifted._terms.items():
        if not any(exps):
            const = c
            continue
        term = abs(Fraction(c))
        for r, e in zip(rad, exps):
            if e:
                term *= r ** e
                if not term:
                    break
        spread += term
    return const - spread, const + spread


def decide_sign(f: MultiPoly, box: IntervalBox, budget: int = DEFAULT_BUDGET, evidence=None) -> Sign:
    """Sign of ``f`` on all of ``box``, bisecting at most ``budget`` times.

    Uses the monotone split when the box is in the positive orthant and the
    centered form otherwise. Returns :attr:`Sign.UNDETERMINED` when the pieces
    disagree or a piece contains a zero; raises :class:`Inconclusive` when the
    budget runs out first.
    """
    positive = all(box[v][0] > 0 for v in f.free_variables())
    work = [box]
    signs = set()
    splits = 0
    while work:
        b = work.pop()
        lo, hi = bounds_on_box(f, b) if positive else range_on_box(f, b)
        if lo > 0:
            signs.add(Sign.POSITIVE)
        elif hi < 0:
            signs.add(Sign.NEGATIVE)
        else:
            if lo == hi == 0 or b.width() == 0:
                return Sign.UNDETERMINED
            # an exact value of the wrong sign (or a zero) settles it without refining
            mid = f.evaluate(b.center())
            if mid == 0:
                return Sign.UNDETERMINED
            signs.add(Sign.POSITIVE if mid > 0 else Sign.NEGATIVE)
            if len(signs) > 1:
                return Sign.UNDETERMINED
            splits += 1
            if splits > budget:
                raise Inconclusive(f"sign of polynomial undecided after {budget} bisections")
            work.extend(b.bisect())
        if len(signs) > 1:
            return Sign.UNDETERMINED
    if evidence is not None:
        evidence["bisections"] = splits
    return signs.pop() if signs else Sign.UNDETERMINED
