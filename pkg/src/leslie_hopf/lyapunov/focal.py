"""Lyapunov constants by the formal first-integral method.

The equilibrium is moved to the origin, the linear part is brought to a
rotation ``X' = -omega Y, Y' = omega X`` and a series
``H = X^2 + Y^2 + H_3 + H_4 + ...`` is built degree by degree so that

    dH/dt = V3 (X^2 + Y^2)^2 + V5 (X^2 + Y^2)^3 + ...

``omega`` never becomes a number: it is a formal symbol with
``omega^2 = det``. At odd degrees the homological equation is uniquely
solvable; at even degrees the obstruction ``V`` is read off with a left null
vector of the rotation operator. Every step only multiplies ring elements by
rationals or divides by ``det``, so the same code runs over rationals,
quadratic surds, or Laurent polynomials in the parameters.
"""
from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..algebra import QuadSurd, pseudo_divide
from ..algebra.laurent import LaurentPoly
from ..errors import NonzeroTrace, NotCenterFocusType
from ..model import AlphaBetaParams, Equilibrium, Form, alpha_beta_rhs, quintic_rhs
from .series import BiPoly, OmegaNumber, is_zero

__all__ = ["SymbolicParams", "SymbolicAlphaBeta", "ShiftedSystem", "LyapunovConstants",
           "shift_to_origin", "focal_constants"]

SymbolicParams = namedtuple("SymbolicParams", "K b s")
SymbolicAlphaBeta = namedtuple("SymbolicAlphaBeta", "alpha beta s")


@dataclass(frozen=True)
class ShiftedSystem:
    """``u' = sum a[j,k] u^j v^k``, ``v' = sum b[j,k] u^j v^k`` around an equilibrium."""

    f: dict
    g: dict
    center: tuple = (1, 1)
    form: str = "quintic"

    def a(self, j: int, k: int):
        return self.f.get((j, k), 0)

    def b(self, j: int, k: int):
        return self.g.get((j, k), 0)

    @property
    def trace(self):
        return self.a(1, 0) + self.b(0, 1)

    @property
    def det(self):
        return self.a(1, 0) * self.b(0, 1) - self.a(0, 1) * self.b(1, 0)

    def evaluate(self, u, v):
        """Field value at ``(u, v)`` for numeric coefficients."""
        fu = sum(c * u ** j * v ** k for (j, k), c in self.f.items())
        gv = sum(c * u ** j * v ** k for (j, k), c in self.g.items())
        return fu, gv

    def coefficient_table(self) -> dict:
        """``{"a10": ..., "b22": ...}`` for every nonzero coefficient."""
        out = {f"a{j}{k}": c for (j, k), c in sorted(self.f.items())}
        out.update({f"b{j}{k}": c for (j, k), c in sorted(self.g.items())})
        return out


def _plain(x):
    """QuadSurds with a rational value become Fractions."""
    if isinstance(x, QuadSurd) and x.is_rational():
        return x.rational()
    return x


def shift_to_origin(params, eq=None, form=None) -> ShiftedSystem:
    """Expand the field around ``eq`` in ``u = x - x_e``, ``v = y - y_e``.

    ``params`` is a :class:`ModelParams`, :class:`AlphaBetaParams` or one of
    the symbolic tuples, whose entries may be any ring elements. ``eq`` is an
    :class:`Equilibrium`, an ``(x, y)`` pair or ``None`` for ``(1, 1)``.
    The polynomial forms are used (quintic, or the alpha-beta form for
    alpha-beta parameters).
    """
    if eq is None:
        center = (1, 1)
    elif isinstance(eq, Equilibrium):
        center = (_plain(eq.x), _plain(eq.y))
    else:
        center = tuple(_plain(c) for c in eq)
    if form is None:
        form = Form.ALPHA_BETA if isinstance(params, (AlphaBetaParams, SymbolicAlphaBeta)) \
            else Form.QUINTIC
    form = Form(form)
    x = BiPoly.u() + BiPoly.const(center[0])
    y = BiPoly.v() + BiPoly.const(center[1])
    if form is Form.ALPHA_BETA:
        lifted = [BiPoly.const(c) for c in (params.alpha, params.beta, params.s)]
        f, g = alpha_beta_rhs(*lifted, x, y)
    elif form is Form.QUINTIC:
        lifted = [BiPoly.const(c) for c in (params.K, params.b, params.s)]
        f, g = quintic_rhs(*lifted, x, y)
    else:
        raise ValueError("the rational form has no polynomial expansion; use the quintic form")
    shifted = ShiftedSystem(f.terms, g.terms, center, form.value)
    for c in (f.coeff(0, 0), g.coeff(0, 0)):
        if not is_zero(c):
            raise ValueError("the expansion point is not an equilibrium")
    return shifted


@dataclass(frozen=True)
class LyapunovConstants:
    """``V1`` is the trace; ``V3`` and ``V5`` are the first two obstructions.

    The values agree with any other focal-value normalisation up to a
    positive factor per constant. ``V5`` depends on the choice made in the
    fourth-degree part of the series whenever ``V3 != 0``; ``V5_reduced`` is
    its remainder modulo ``V3`` (exactly ``V5`` when ``V3 = 0`` at a numeric
    point, a pseudo-remainder in ``b`` for symbolic runs).

    ``coupling`` is the coefficient of ``v`` in ``u'``. Rescaling ``v`` by it
    multiplies ``V3`` by ``coupling^2`` and ``V5`` by ``coupling^4``; that is
    the normalisation of the closed forms in :mod:`.reference`, see
    :meth:`in_coupling_units`.
    """

    V1: object
    V3: object
    V5: object = None
    V5_reduced: object = None
    omega_squared: object = None
    normalization: str = ("H = X^2 + Y^2 + ... in coordinates where the linear part is "
                          "X' = -omega Y, Y' = omega X, with dH/dt = V3 r^4 + V5 r^6 + ...")
    extra: dict = field(default_factory=dict)
    coupling: object = None

    def in_coupling_units(self) -> "LyapunovConstants":
        """The same constants with ``v`` measured in units of ``coupling``."""
        q2 = self.coupling * self.coupling
        scale = (lambda c: None if c is None else _tidy(c * q2),
                 lambda c: None if c is None else _tidy(c * q2 * q2))
        return LyapunovConstants(self.V1, scale[0](self.V3), scale[1](self.V5),
                                 scale[1](self.V5_reduced), self.omega_squared,
                                 "V3 * coupling^2 and V5 * coupling^4", dict(self.extra),
                                 Fraction(1))


def _tidy(c):
    return c.extract() if isinstance(c, LaurentPoly) else c


def _solve(matrix, rhs):
    """Gauss-Jordan over Fractions; ``rhs`` columns are lists of Fractions."""
    n = len(matrix)
    a = [list(map(Fraction, row)) + [Fraction(r) for r in rr] for row, rr in zip(matrix, rhs)]
    width = len(a[0])
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [v - factor * w for v, w in zip(a[r], a[col])]
    return [row[n:width] for row in a]


def _rotation_matrix(k: int):
    """Matrix of ``X d/dY - Y d/dX`` on the basis ``X^(k-i) Y^i``."""
    m = [[0] * (k + 1) for _ in range(k + 1)]
    for i in range(k + 1):
        if i:
            m[i - 1][i] = i
        if i < k:
            m[i + 1][i] = -(k - i)
    return m


@lru_cache(maxsize=None)
def _homological(k: int):
    """Rational data for degree ``k``.

    Returns ``(solver, left_null, radial)``: ``solver`` maps a right-hand
    side in the range to the solution with zero ``X^k`` coefficient (a full
    inverse at odd ``k``); for even ``k``, ``left_null`` annihilates the
    range and ``radial`` lists the coefficients of ``(X^2 + Y^2)^(k/2)``.
    """
    m = _rotation_matrix(k)
    n = k + 1
    identity = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    if k % 2:
        return tuple(tuple(r) for r in _solve(m, identity)), None, None
    # left null vector: solve l M = 0 with l_0 = 1 (M^T restricted)
    mt = [[m[j][i] for j in range(n)] for i in range(n)]
    sub = [row[1:] for row in mt[1:]]
    rhs = [[-row[0]] for row in mt[1:]]
    tail = [r[0] for r in _solve(sub, rhs)]
    left = (Fraction(1),) + tuple(tail)
    # solve with the X^k coefficient pinned to zero, dropping the last row
    sub = [row[1:] for row in m[:-1]]
    part = _solve(sub, [r[:-1] for r in identity[:-1]])
    solver = [[Fraction(0)] * n] + [list(r) + [Fraction(0)] for r in part]
    half = k // 2
    from math import comb
    radial = tuple(Fraction(comb(half, i // 2)) if i % 2 == 0 else Fraction(0) for i in range(n))
    return tuple(tuple(r) for r in solver), left, radial


def _vector(poly: BiPoly, k: int, zero):
    return [poly.coeff(k - i, i, zero) for i in range(k + 1)]


def _from_vector(vec, k: int) -> BiPoly:
    return BiPoly({(k - i, i): c for i, c in enumerate(vec)})


def _dot(row, vec, zero):
    total = zero
    for r, c in zip(row, vec):
        if r:
            total = total + c * r
    return total


def _exactify(c):
    return Fraction(c) if isinstance(c, int) else c


def _field_zero(x):
    if isinstance(x, LaurentPoly):
        return LaurentPoly(x.basis, 0)
    if isinstance(x, QuadSurd):
        return QuadSurd(0)
    return Fraction(0)


def focal_constants(shifted: ShiftedSystem, order: int = 2, check_det: bool = True) -> LyapunovConstants:
    """``V1``, ``V3`` and (for ``order == 2``) ``V5`` at the shifted origin.

    Requires zero trace and, for numeric coefficients, positive determinant.
    Symbolic coefficients skip the determinant sign test (the caller owns the
    parameter regime) but ``det`` must split over the Laurent factor basis.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    shifted = ShiftedSystem({k: _exactify(c) for k, c in shifted.f.items()},
                            {k: _exactify(c) for k, c in shifted.g.items()},
                            shifted.center, shifted.form)
    p, q = shifted.a(1, 0), shifted.a(0, 1)
    r, t = shifted.b(1, 0), shifted.b(0, 1)
    trace = p + t
    if not is_zero(trace):
        raise NonzeroTrace(f"trace {trace} is not zero")
    det = p * t - q * r
    zero = _field_zero(det) if not isinstance(det, int) else Fraction(0)
    if check_det and not isinstance(det, LaurentPoly):
        if not det > 0:
            raise NotCenterFocusType(f"determinant {det} is not positive")
    if isinstance(det, LaurentPoly):
        det = det.extract()
        if det.is_zero():
            raise NotCenterFocusType("determinant vanishes identically")
    if is_zero(q):
        raise NotCenterFocusType("linear part is not a rotation")

    def lift(c):
        return OmegaNumber(c + zero, zero, det)

    one = lift(1)
    w = OmegaNumber(zero, zero + 1, det)
    # u = X, v = -(omega Y + p X)/q
    X = BiPoly({(1, 0): one})
    V = BiPoly({(0, 1): w * (-1), (1, 0): lift(p) * (-1)})
    V = V.map(lambda c: OmegaNumber(c.re / q, c.im / q, det))
    f = BiPoly({k: lift(c) for k, c in shifted.f.items()}).compose(X, V)
    g = BiPoly({k: lift(c) for k, c in shifted.g.items()}).compose(X, V)
    # Y' = -(p f + q g)/omega
    ydot = (f * lift(p) + g * lift(q)).map(lambda c: (-c).div_omega())
    top = 2 * order + 2
    fp = {j: f.homogeneous(j) for j in range(2, top)}
    gp = {j: ydot.homogeneous(j) for j in range(2, top)}
    ozero = lift(0)
    H = {2: BiPoly({(2, 0): one, (0, 2): one})}
    dH = {2: (H[2].diff_u(), H[2].diff_v())}
    obstructions = {}
    for k in range(3, top + 1):
        R = BiPoly()
        for m in range(2, k):
            j = k + 1 - m
            if j not in fp:
                continue
            hx, hy = dH[m]
            R = R + hx * fp[j] + hy * gp[j]
        R = R.homogeneous(k)
        rvec = _vector(R, k, ozero)
        solver, left, radial = _homological(k)
        if left is None:
            target = [-c for c in rvec]
        else:
            value = _dot(left, rvec, ozero) / _dot(left, radial, Fraction(0))
            obstructions[k] = value
            target = [value * rad - c for rad, c in zip(radial, rvec)]
        sol = [_dot(row, target, ozero).div_omega() for row in solver]
        H[k] = _from_vector(sol, k)
        dH[k] = (H[k].diff_u(), H[k].diff_v())

    def base(value: OmegaNumber):
        if not is_zero(value.im):
            raise ArithmeticError("obstruction has an odd power of omega")
        return value.re

    V3 = base(obstructions[4])
    V5 = base(obstructions[6]) if order == 2 else None
    reduced = None
    extra = {}
    if V5 is not None:
        if isinstance(V3, LaurentPoly):
            reduced, extra = _reduce_symbolic(V5, V3)
        elif is_zero(V3):
            reduced = V5
    if isinstance(V3, LaurentPoly):
        V3 = V3.extract()
    return LyapunovConstants(trace, V3, V5, reduced, det, extra=extra, coupling=q)


def _reduce_symbolic(V5: LaurentPoly, V3: LaurentPoly, var: str = "b"):
    """Pseudo-remainder of ``num(V5)`` by ``num(V3)`` in ``var``."""
    v3, v5 = V3.extract(), V5.extract()
    multiplier, _, rem = pseudo_divide(v5.num, v3.num, var)
    return LaurentPoly(v5.basis, rem, v5.exps), {"multiplier": multiplier,
                                                 "V3_numerator": v3.num,
                                                 "V5_numerator": v5.num}
