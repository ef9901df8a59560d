"""Pseudo-division and Sylvester resultants of multivariate polynomials."""
from __future__ import annotations

from ..errors import DegreeError
from .poly import MultiPoly

__all__ = ["pseudo_divide", "resultant", "sylvester_matrix", "bareiss_determinant"]


def pseudo_divide(dividend: MultiPoly, divisor: MultiPoly, var: str):
    """Pseudo-division in ``var``.

    Returns ``(multiplier, quotient, remainder)`` with
    ``multiplier * dividend == quotient * divisor + remainder`` and
    ``deg_var(remainder) < deg_var(divisor)``. The multiplier is a power of the
    divisor's leading coefficient in ``var``; a factor is only introduced at
    steps where the current leading coefficient is not already divisible by it.
    """
    d = divisor.degree(var)
    if d <= 0:
        raise DegreeError(f"divisor has no positive degree in {var}")
    vars_ = dividend.variables + tuple(v for v in divisor.variables if v not in dividend.variables)
    if var not in vars_:
        vars_ = vars_ + (var,)
    dividend = dividend.with_variables(vars_)
    divisor = divisor.with_variables(vars_)
    lc = divisor.leading_coeff(var)
    x = MultiPoly.var(var, vars_)
    one = MultiPoly.const(1, vars_)
    multiplier = one
    quotient = MultiPoly.const(0, vars_)
    rem = dividend
    while not rem.is_zero() and rem.degree(var) >= d:
        k = rem.degree(var)
        c = rem.leading_coeff(var)
        try:
            factor = c.divide_exact(lc)
        except ArithmeticError:
            rem = rem * lc
            quotient = quotient * lc
            multiplier = multiplier * lc
            factor = c
        mono = factor * x ** (k - d)
        quotient = quotient + mono
        rem = rem - mono * divisor
    return multiplier, quotient, rem


def sylvester_matrix(f: MultiPoly, g: MultiPoly, var: str):
    """Sylvester matrix with the ``deg g`` rows of ``f`` first."""
    m, n = f.degree(var), g.degree(var)
    fc = list(reversed(f.coefficients_in(var)))
    gc = list(reversed(g.coefficients_in(var)))
    vars_ = f.variables + tuple(v for v in g.variables if v not in f.variables)
    zero = MultiPoly.const(0, vars_)
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + [c.with_variables(vars_) for c in fc] + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + [c.with_variables(vars_) for c in gc] + [zero] * (size - n - 1 - i))
    return rows


def bareiss_determinant(rows):
    """Fraction-free determinant of a square matrix of polynomials."""
    a = [list(r) for r in rows]
    size = len(a)
    if size == 0:
        return MultiPoly.const(1)
    sign = 1
    prev = None
    for k in range(size - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, size):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return a[k][k] * 0
        pivot = a[k][k]
        for i in range(k + 1, size):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, size):
                if aik.is_zero():
                    val = row_i[j] * pivot
                elif row_k[j].is_zero():
                    val = row_i[j] * pivot
                else:
                    val = row_i[j] * pivot - aik * row_k[j]
                if prev is not None and not val.is_zero():
                    val = val.divide_exact(prev)
                row_i[j] = val
            row_i[k] = row_i[k] * 0
        prev = pivot
    det = a[size - 1][size - 1]
    return det if sign > 0 else -det


def resultant(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Sylvester resultant of ``f`` and ``g`` with respect to ``var``.

    Convention: determinant of :func:`sylvester_matrix` (rows of ``f`` first),
    so ``resultant(x - 1, x + 1, "x") == 2``.
    """
    if f.degree(var) <= 0 or g.degree(var) <= 0:
        raise DegreeError(f"both polynomials need positive degree in {var}")
    det = bareiss_determinant(sylvester_matrix(f, g, var))
    keep = tuple(v for v in det.variables if v != var)
    return det.with_variables(keep)
