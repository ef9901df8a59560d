"""Rational functions whose denominators are products of known factors.

A :class:`LaurentPoly` is ``numerator * prod(f_i ** e_i)`` for a fixed
:class:`FactorBasis` ``f_1, ..., f_n`` and integer exponents ``e_i`` of
either sign. Sums bring both operands to the smallest exponents, so no
polynomial gcd is ever needed; division is allowed only by elements whose
numerator is a constant times a product of basis factors.
"""
from __future__ import annotations

from fractions import Fraction

from .poly import MultiPoly, to_rational

__all__ = ["FactorBasis", "LaurentPoly"]


class FactorBasis:
    """An ordered tuple of nonconstant polynomials used as denominators."""

    def __init__(self, factors, names=None):
        self.factors = tuple(factors)
        self.names = tuple(names) if names is not None else tuple(str(f) for f in self.factors)
        vars_ = []
        for f in self.factors:
            for v in f.variables:
                if v not in vars_:
                    vars_.append(v)
        self.variables = tuple(vars_)
        self._powers = [{0: MultiPoly.const(1, self.variables)} for _ in self.factors]

    def power(self, i: int, k: int) -> MultiPoly:
        cache = self._powers[i]
        if k not in cache:
            cache[k] = self.power(i, k - 1) * self.factors[i]
        return cache[k]

    def lift(self, value) -> "LaurentPoly":
        return LaurentPoly(self, value)

    def monomial(self, exponents, coefficient=1) -> "LaurentPoly":
        return LaurentPoly(self, coefficient, exponents)

    def __len__(self):
        return len(self.factors)


class LaurentPoly:
    __slots__ = ("basis", "num", "exps")

    def __init__(self, basis: FactorBasis, num=0, exps=None):
        self.basis = basis
        if not isinstance(num, MultiPoly):
            num = MultiPoly.const(to_rational(num), basis.variables)
        self.num = num
        self.exps = tuple(exps) if exps is not None else (0,) * len(basis)

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.basis is not self.basis:
                raise ValueError("operands use different factor bases")
            return other
        if isinstance(other, (int, Fraction, MultiPoly)):
            return LaurentPoly(self.basis, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def _scaled(self, target):
        """Numerator re-expressed over exponents ``target <= self.exps``."""
        num = self.num
        for i, (e, t) in enumerate(zip(self.exps, target)):
            if e > t:
                num = num * self.basis.power(i, e - t)
        return num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        low = tuple(min(a, b) for a, b in zip(self.exps, o.exps))
        return LaurentPoly(self.basis, self._scaled(low) + o._scaled(low), low)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.basis, -self.num, self.exps)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(self.basis, self.num * other, self.exps)
        o = self._coerce(other)
        if self.is_zero() or o.is_zero():
            return LaurentPoly(self.basis, 0)
        return LaurentPoly(self.basis, self.num * o.num,
                           tuple(a + b for a, b in zip(self.exps, o.exps)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = LaurentPoly(self.basis, 1)
        for _ in range(k):
            out = out * self
        return out

    def extract(self) -> "LaurentPoly":
        """Move every basis factor dividing the numerator into the exponents."""
        if self.is_zero():
            return LaurentPoly(self.basis, 0)
        num = self.num
        exps = list(self.exps)
        for i, f in enumerate(self.basis.factors):
            while num.degree() > 0:
                try:
                    num = num.divide_exact(f)
                except ArithmeticError:
                    break
                exps[i] += 1
        return LaurentPoly(self.basis, num, exps)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(self.basis, self.num / other, self.exps)
        o = self._coerce(other).extract()
        if not o.num.is_constant() or o.num.is_zero():
            raise ArithmeticError(f"cannot divide by {o.num}: not a product of basis factors")
        c = Fraction(o.num.constant_value())
        return LaurentPoly(self.basis, self.num / c, tuple(a - b for a, b in zip(self.exps, o.exps)))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        try:
            return (self - other).is_zero()
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.extract().num)

    def evaluate(self, point: dict) -> Fraction:
        value = Fraction(self.num.evaluate(point))
        for f, e in zip(self.basis.factors, self.exps):
            if e:
                value *= Fraction(f.evaluate(point)) ** e
        return value

    def evaluate_float(self, point: dict) -> float:
        value = self.num.evaluate_float(point)
        for f, e in zip(self.basis.factors, self.exps):
            if e:
                value *= f.evaluate_float(point) ** e
        return value

    def as_fraction(self):
        """``(numerator, denominator)`` polynomials."""
        num, den = self.num, MultiPoly.const(1, self.basis.variables)
        for i, e in enumerate(self.exps):
            if e > 0:
                num = num * self.basis.power(i, e)
            elif e < 0:
                den = den * self.basis.power(i, -e)
        return num, den

    def __str__(self):
        parts = [f"({self.num})"]
        for name, e in zip(self.basis.names, self.exps):
            if e:
                parts.append(f"({name})^{e}" if e != 1 else f"({name})")
        return "*".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self})"
