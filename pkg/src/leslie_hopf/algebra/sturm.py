"""Sturm sequences, root counting and real-root isolation for univariate polys."""
from __future__ import annotations

from fractions import Fraction

from ..errors import DegenerateInput
from . import upoly
from .intervals import IntervalBox
from .poly import MultiPoly

__all__ = ["SturmSequence", "sturm_count", "isolate_roots", "refine_root", "univariate_parts"]

DEFAULT_WIDTH = Fraction(1, 2 ** 64)


def univariate_parts(p: MultiPoly):
    """``(variable, dense ascending coefficients)`` of a univariate polynomial."""
    free = p.free_variables()
    if len(free) > 1:
        raise ValueError(f"expected a univariate polynomial, got variables {free}")
    var = free[0] if free else (p.variables[0] if p.variables else "x")
    return var, p.to_dense(var)


def _bounds(interval, var):
    if interval is None:
        return None, None
    if isinstance(interval, IntervalBox):
        if var in interval.variables:
            return interval[var]
        if len(interval.variables) == 1:
            return interval[interval.variables[0]]
        raise ValueError(f"interval does not bound {var}")
    lo, hi = interval
    return (None if lo is None else Fraction(lo)), (None if hi is None else Fraction(hi))


class SturmSequence:
    """The Sturm chain ``p, p', -rem(p, p'), ...`` of a univariate polynomial.

    Elements are scaled by positive constants to keep integer coefficients,
    which leaves every sign variation unchanged.
    """

    __slots__ = ("variable", "chain", "_dense")

    def __init__(self, p: MultiPoly):
        var, dense = univariate_parts(p)
        if not dense:
            raise DegenerateInput("Sturm sequence of the zero polynomial")
        self.variable = var
        self._dense = upoly.sturm_chain(upoly.to_integer(dense))
        # the first element is the input itself, not its integer rescaling
        self.chain = (p,) + tuple(MultiPoly.from_dense(q, var) for q in self._dense[1:])

    def variations(self, x) -> int:
        return upoly.variations(self._dense, x)

    def count(self, lo, hi) -> int:
        """Distinct roots in ``(lo, hi]``; ``None`` means unbounded."""
        lo = float("-inf") if lo is None else Fraction(lo)
        hi = float("inf") if hi is None else Fraction(hi)
        return upoly.count_roots(self._dense, lo, hi)


def sturm_count(p: MultiPoly, interval=None) -> int:
    """Exact number of distinct real roots of ``p`` in the open interval.

    ``interval`` is a one-variable :class:`IntervalBox`, a ``(lo, hi)`` pair or
    ``None``; ``None`` endpoints are infinite. The squarefree part is used, so
    endpoints that happen to be roots need no special care.
    """
    var, dense = univariate_parts(p)
    if not dense:
        raise DegenerateInput("cannot count the roots of the zero polynomial")
    sq = upoly.squarefree(dense)
    if upoly.degree(sq) == 0:
        return 0
    lo, hi = _bounds(interval, var)
    chain = upoly.sturm_chain(sq)
    a = float("-inf") if lo is None else lo
    b = float("inf") if hi is None else hi
    n = upoly.count_roots(chain, a, b)
    if hi is not None and upoly.sign_at(sq, hi) == 0:
        n -= 1
    return n


def isolate_roots(p: MultiPoly, search=None, width=DEFAULT_WIDTH) -> list:
    """Disjoint isolating intervals of width at most ``width`` for every real
    root of ``p`` in the closed ``search`` interval (all reals if ``None``)."""
    var, dense = univariate_parts(p)
    if not dense:
        raise DegenerateInput("cannot isolate the roots of the zero polynomial")
    lo, hi = _bounds(search, var)
    return [IntervalBox([(var, ab)]) for ab in upoly.isolate(dense, lo, hi, Fraction(width))]


def refine_root(p: MultiPoly, box: IntervalBox, width) -> IntervalBox:
    """Shrink an isolating interval of ``p`` to ``width`` by sign bisection."""
    var, dense = univariate_parts(p)
    sq = upoly.squarefree(dense)
    lo, hi = box[var] if var in box.variables else box[box.variables[0]]
    if lo == hi:
        return box
    return IntervalBox([(var, upoly.refine(sq, lo, hi, Fraction(width)))])
