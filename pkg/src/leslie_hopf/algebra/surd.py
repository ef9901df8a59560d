"""Exact arithmetic in a single real quadratic extension Q(sqrt(d))."""
from __future__ import annotations

import math
from fractions import Fraction

from .poly import rational_str, to_rational

__all__ = ["QuadSurd"]


def _rational_sqrt(q: Fraction):
    """``sqrt(q)`` if it is rational, else ``None``."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class QuadSurd:
    """The real number ``a + c*sqrt(d)`` with rational ``a``, ``c`` and ``d >= 0``.

    Values whose radical is rational collapse to ``c = 0``. Binary operations
    require a shared radicand (or a plain rational operand).
    """

    __slots__ = ("a", "c", "d")

    def __init__(self, a=0, c=0, d=0):
        a, c, d = Fraction(to_rational(a)), Fraction(to_rational(c)), Fraction(to_rational(d))
        if d < 0:
            raise ValueError("radicand must be non-negative")
        root = _rational_sqrt(d)
        if root is not None:
            a, c, d = a + c * root, Fraction(0), Fraction(0)
        if c == 0:
            d = Fraction(0)
        self.a, self.c, self.d = a, c, d

    @classmethod
    def sqrt(cls, d) -> "QuadSurd":
        return cls(0, 1, d)

    def _other(self, other):
        if isinstance(other, QuadSurd):
            if other.c and self.c and other.d != self.d:
                raise ValueError(f"radicands differ: {self.d} and {other.d}")
            return other
        return QuadSurd(to_rational(other))

    def _radicand(self, other):
        return self.d if self.c else other.d

    def __add__(self, other):
        o = self._other(other)
        return QuadSurd(self.a + o.a, self.c + o.c, self._radicand(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.c, self.d)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        d = self._radicand(o)
        return QuadSurd(self.a * o.a + self.c * o.c * d, self.a * o.c + self.c * o.a, d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadSurd":
        return QuadSurd(self.a, -self.c, self.d)

    def norm(self) -> Fraction:
        """``(a + c√d)(a - c√d)``, a rational."""
        return self.a * self.a - self.c * self.c * self.d

    def __truediv__(self, other):
        o = self._other(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        num = self * o.conjugate()
        return QuadSurd(num.a / n, num.c / n, num.d)

    def __rtruediv__(self, other):
        return self._other(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = QuadSurd(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sc = (self.c > 0) - (self.c < 0)
        if sc == 0:
            return sa
        if sa == 0 or sa == sc:
            return sc
        lhs, rhs = self.a * self.a, self.c * self.c * self.d
        if lhs > rhs:
            return sa
        if lhs < rhs:
            return sc
        return 0

    def is_rational(self) -> bool:
        return self.c == 0

    def rational(self) -> Fraction:
        if self.c:
            raise ValueError("value is irrational")
        return self.a

    def __float__(self):
        return float(self.a) + float(self.c) * math.sqrt(float(self.d))

    def __eq__(self, other):
        try:
            return (self - other).sign() == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.a, self.c, self.d))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __repr__(self):
        return f"QuadSurd({self})"

    def __str__(self):
        if not self.c:
            return rational_str(self.a)
        return f"{rational_str(self.a)} + {rational_str(self.c)}*sqrt({rational_str(self.d)})"

    def to_json_obj(self):
        return {"a": rational_str(self.a), "c": rational_str(self.c), "d": rational_str(self.d),
                "approx": float(self)}
