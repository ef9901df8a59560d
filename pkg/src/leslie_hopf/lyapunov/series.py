"""Bivariate polynomials over an arbitrary coefficient ring, and the ring
``B[omega]/(omega^2 - det)`` used to carry the rotation frequency."""
from __future__ import annotations

from fractions import Fraction

__all__ = ["is_zero", "BiPoly", "OmegaNumber"]


def is_zero(c) -> bool:
    probe = getattr(c, "is_zero", None)
    if probe is not None:
        return probe()
    return c == 0


class BiPoly:
    """``sum c[i, j] u^i v^j`` with coefficients from any commutative ring.

    Scalars mixed into arithmetic must be compatible with the coefficients
    (ints and Fractions always are).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: c for k, c in (terms or {}).items() if not is_zero(c)}

    @classmethod
    def u(cls, one=1):
        return cls({(1, 0): one})

    @classmethod
    def v(cls, one=1):
        return cls({(0, 1): one})

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    def _coerce(self, other):
        return other if isinstance(other, BiPoly) else BiPoly.const(other)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out[k] + c if k in out else c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            return BiPoly({k: c * other for k, c in self.terms.items()})
        out = {}
        for (i, j), c in self.terms.items():
            for (k, l), d in other.terms.items():
                key = (i + k, j + l)
                term = c * d
                out[key] = out[key] + term if key in out else term
        return BiPoly(out)

    def __rmul__(self, other):
        return BiPoly({k: other * c for k, c in self.terms.items()})

    def __pow__(self, n: int):
        out = BiPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def coeff(self, i: int, j: int, zero=0):
        return self.terms.get((i, j), zero)

    def homogeneous(self, degree: int) -> "BiPoly":
        return BiPoly({k: c for k, c in self.terms.items() if sum(k) == degree})

    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def diff_u(self) -> "BiPoly":
        return BiPoly({(i - 1, j): c * i for (i, j), c in self.terms.items() if i})

    def diff_v(self) -> "BiPoly":
        return BiPoly({(i, j - 1): c * j for (i, j), c in self.terms.items() if j})

    def map(self, fn) -> "BiPoly":
        return BiPoly({k: fn(c) for k, c in self.terms.items()})

    def compose(self, u_poly: "BiPoly", v_poly: "BiPoly") -> "BiPoly":
        """``self(u_poly, v_poly)``."""
        upow, vpow = {0: BiPoly.const(1)}, {0: BiPoly.const(1)}
        out = BiPoly()
        for (i, j), c in self.terms.items():
            for cache, base, n in ((upow, u_poly, i), (vpow, v_poly, j)):
                for k in range(len(cache), n + 1):
                    cache[k] = cache[k - 1] * base
            out = out + (upow[i] * vpow[j]) * c
        return out

    def __repr__(self):
        return f"BiPoly({self.terms!r})"


class OmegaNumber:
    """``re + im * omega`` where ``omega^2 = det`` lies in the base ring.

    Division is only ever by ``omega`` (through ``det``) or by rationals.
    """

    __slots__ = ("re", "im", "det")

    def __init__(self, re, im, det):
        self.re, self.im, self.det = re, im, det

    def _coerce(self, other):
        if isinstance(other, OmegaNumber):
            return other
        return OmegaNumber(other, 0 * other if not isinstance(other, (int, Fraction)) else 0,
                           self.det)

    def is_zero(self) -> bool:
        return is_zero(self.re) and is_zero(self.im)

    def __add__(self, other):
        o = self._coerce(other)
        return OmegaNumber(self.re + o.re, self.im + o.im, self.det)

    __radd__ = __add__

    def __neg__(self):
        return OmegaNumber(-self.re, -self.im, self.det)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return OmegaNumber(self.re * other, self.im * other, self.det)
        o = self._coerce(other)
        if is_zero(self.im) and is_zero(o.im):
            return OmegaNumber(self.re * o.re, 0 * self.re, self.det)
        return OmegaNumber(self.re * o.re + self.im * o.im * self.det,
                           self.re * o.im + self.im * o.re, self.det)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return OmegaNumber(self.re / other, self.im / other, self.det)
        return NotImplemented

    def div_omega(self) -> "OmegaNumber":
        """``self / omega = im + re * omega / det``."""
        return OmegaNumber(self.im, self.re / self.det, self.det)

    def __repr__(self):
        return f"OmegaNumber({self.re!r} + ({self.im!r})*omega)"
