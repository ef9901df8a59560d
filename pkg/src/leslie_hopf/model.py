"""The reduced Leslie predator-prey system with simplified Holling IV response.

After scaling so that one positive equilibrium sits at ``(1, 1)`` the system
depends on three numbers ``K > 1``, ``b > 0`` and ``s > 0``::

    x' = x (1 - x/K) - (K-1)(b+1) x y / (K (x^2 + b))
    y' = s y (1 - y/x)

Multiplying by ``K x (x^2 + b)`` (positive for ``x > 0``) gives a quintic
polynomial field with the same orbits; this module reports Jacobian traces
and determinants in that quintic time. When the cubic
``(x - 1)(x^2 - (K-1) x + K b)`` has three positive roots ``1 < alpha < beta``
the system can also be parameterised by ``(alpha, beta, s)``.

All parameters are exact rationals. Floats are read through their shortest
decimal representation, so ``0.54`` means ``27/50``.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction

from .algebra import MultiPoly, QuadSurd, rational_str, symbols
from .errors import DomainError, NotAntiSaddle

__all__ = [
    "exact", "ModelParams", "AlphaBetaParams", "Form", "EquilibriumClass", "Equilibrium",
    "HopfThresholds", "RationalExpr", "vector_field", "rational_rhs", "quintic_rhs",
    "alpha_beta_rhs", "find_positive_equilibria", "boundary_equilibrium",
    "classify_equilibrium", "hopf_thresholds", "simultaneous_hopf_params",
    "params_from_json",
]


def exact(value) -> Fraction:
    """An exact rational from an int, Fraction, ``"p/q"``/decimal string or float."""
    if isinstance(value, bool):
        raise TypeError("booleans are not parameter values")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot read {value!r} as an exact rational")


@dataclass(frozen=True)
class ModelParams:
    """Validated ``(K, b, s)`` with ``K > 1``, ``b > 0``, ``s > 0``."""

    K: Fraction
    b: Fraction
    s: Fraction

    def __init__(self, K, b, s):
        K, b, s = exact(K), exact(b), exact(s)
        if not K > 1:
            raise DomainError(f"K must exceed 1, got {K}")
        if not b > 0:
            raise DomainError(f"b must be positive, got {b}")
        if not s > 0:
            raise DomainError(f"s must be positive, got {s}")
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "s", s)

    @classmethod
    def at_weak_focus(cls, K, b) -> "ModelParams":
        """Parameters with ``s`` set to the trace zero of the unit equilibrium."""
        K, b = exact(K), exact(b)
        return cls(K, b, (2 * K - b - 3) / (K * (b + 1)))

    @classmethod
    def from_raw(cls, r, K, m, b, s, h, x_star, y_star=None) -> "ModelParams":
        """Reduce ``x' = r x (1 - x/K) - m x y/(x^2 + b)``, ``y' = s y (1 - y/(h x))``.

        ``(x_star, y_star)`` must be a positive equilibrium of the raw system
        (``y_star`` defaults to ``h * x_star``). Coordinates are divided by
        the equilibrium and time is multiplied by ``r``, which moves the
        equilibrium to ``(1, 1)`` and forces the scaled predation rate to
        ``(b+1)(1 - 1/K)`` and the scaled ``h`` to 1.
        """
        r, K, m, b, s, h, x_star = (exact(v) for v in (r, K, m, b, s, h, x_star))
        y_star = h * x_star if y_star is None else exact(y_star)
        if min(r, m, h, x_star, y_star) <= 0:
            raise DomainError("raw parameters and equilibrium must be positive")
        K_, b_ = K / x_star, b / x_star ** 2
        m_ = m * y_star / (r * x_star ** 2)
        h_ = h * x_star / y_star
        if h_ != 1 or m_ != (b_ + 1) * (1 - 1 / K_):
            raise DomainError("(x_star, y_star) is not an equilibrium of the raw system")
        return cls(K_, b_, s / r)

    @classmethod
    def from_json(cls, data) -> "ModelParams":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["K"], data["b"], data["s"])

    def to_json_obj(self) -> dict:
        return {"K": rational_str(self.K), "b": rational_str(self.b), "s": rational_str(self.s)}

    def with_s(self, s) -> "ModelParams":
        return ModelParams(self.K, self.b, s)


@dataclass(frozen=True)
class AlphaBetaParams:
    """Three-equilibrium family: roots ``1 < alpha < beta`` of the cubic.

    Recovers ``K = alpha + beta + 1`` and ``b = alpha*beta/K``.
    """

    alpha: Fraction
    beta: Fraction
    s: Fraction

    def __init__(self, alpha, beta, s):
        alpha, beta, s = exact(alpha), exact(beta), exact(s)
        if not 1 < alpha < beta:
            raise DomainError(f"need 1 < alpha < beta, got alpha={alpha}, beta={beta}")
        if not s > 0:
            raise DomainError(f"s must be positive, got {s}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "s", s)

    @property
    def K(self) -> Fraction:
        return self.alpha + self.beta + 1

    @property
    def b(self) -> Fraction:
        return self.alpha * self.beta / self.K

    def to_model(self) -> ModelParams:
        return ModelParams(self.K, self.b, self.s)

    @classmethod
    def from_json(cls, data) -> "AlphaBetaParams":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["alpha"], data["beta"], data["s"])

    def to_json_obj(self) -> dict:
        return {"alpha": rational_str(self.alpha), "beta": rational_str(self.beta),
                "s": rational_str(self.s)}


def params_from_json(data):
    """``ModelParams`` or ``AlphaBetaParams`` depending on the keys present."""
    if isinstance(data, str):
        data = json.loads(data)
    has_kb = "K" in data or "b" in data
    has_ab = "alpha" in data or "beta" in data
    if has_kb == has_ab:
        raise DomainError("give exactly one of {K, b, s} or {alpha, beta, s}")
    return ModelParams.from_json(data) if has_kb else AlphaBetaParams.from_json(data)


def _as_model(params) -> ModelParams:
    return params.to_model() if isinstance(params, AlphaBetaParams) else params


class Form(enum.Enum):
    RATIONAL = "rational"
    QUINTIC = "quintic"
    ALPHA_BETA = "alpha-beta"


# Right-hand sides written with plain operators so that parameters and
# coordinates may be numbers, polynomials or any other ring elements.

def rational_rhs(K, b, s, x, y):
    m = (K - 1) * (b + 1) / K
    return x * (1 - x / K) - m * x * y / (x * x + b), s * y * (1 - y / x)


def quintic_rhs(K, b, s, x, y):
    x2 = x * x
    return ((x2 + b) * (K - x) * x2 - (K - 1) * (b + 1) * x2 * y,
            K * s * y * (x - y) * (x2 + b))


def alpha_beta_rhs(alpha, beta, s, x, y):
    k = alpha + beta + 1
    x2 = x * x
    return ((k * x2 + alpha * beta) * (k - x) * x2
            - (alpha + beta) * (alpha * beta + alpha + beta + 1) * x2 * y,
            k * s * y * (x - y) * (k * x2 + alpha * beta))


@dataclass(frozen=True)
class RationalExpr:
    """``numerator / denominator`` with polynomial parts."""

    numerator: MultiPoly
    denominator: MultiPoly

    def evaluate(self, point: dict):
        return Fraction(self.numerator.evaluate(point)) / Fraction(self.denominator.evaluate(point))

    def evaluate_float(self, point: dict) -> float:
        return self.numerator.evaluate_float(point) / self.denominator.evaluate_float(point)

    def __str__(self):
        return f"({self.numerator}) / ({self.denominator})"


def vector_field(params, form: Form = Form.QUINTIC):
    """``(x', y')`` over the variables ``x, y``.

    Polynomial forms return a pair of :class:`MultiPoly`; the rational form
    returns a pair of :class:`RationalExpr` with positive denominators in
    ``x > 0``.
    """
    form = Form(form)
    x, y = symbols("x y")
    if form is Form.ALPHA_BETA:
        if not isinstance(params, AlphaBetaParams):
            raise TypeError("the alpha-beta form needs AlphaBetaParams")
        return alpha_beta_rhs(params.alpha, params.beta, params.s, x, y)
    p = _as_model(params)
    if form is Form.QUINTIC:
        return quintic_rhs(p.K, p.b, p.s, x, y)
    K, b, s = p.K, p.b, p.s
    den_x = K * (x * x + b)
    num_x = x * (K - x) * (x * x + b) - (K - 1) * (b + 1) * x * y
    return (RationalExpr(num_x, den_x.with_variables(("x", "y"))),
            RationalExpr(s * y * (x - y), x.with_variables(("x", "y"))))


class EquilibriumClass(enum.Enum):
    HYPERBOLIC_SADDLE = "HyperbolicSaddle"
    STABLE_NODE = "StableNode"
    UNSTABLE_NODE = "UnstableNode"
    STABLE_FOCUS = "StableFocus"
    UNSTABLE_FOCUS = "UnstableFocus"
    WEAK_FOCUS_OR_CENTER = "WeakFocusOrCenter"
    DEGENERATE = "Degenerate"

    @property
    def is_anti_saddle(self) -> bool:
        return self not in (EquilibriumClass.HYPERBOLIC_SADDLE, EquilibriumClass.DEGENERATE)


@dataclass(frozen=True)
class Equilibrium:
    """A positive equilibrium ``(x, x)`` with its quintic-time Jacobian data.

    ``role`` is ``"unique"``, ``"first"``, ``"second"`` or ``"third"`` by
    abscissa; ``multiplicity`` is the root multiplicity in the cubic.
    """

    x: QuadSurd
    y: QuadSurd
    trace: QuadSurd
    det: QuadSurd
    classification: EquilibriumClass
    role: str = "unique"
    multiplicity: int = 1

    @property
    def point(self):
        return float(self.x), float(self.y)

    @property
    def discriminant(self) -> QuadSurd:
        return self.trace * self.trace - 4 * self.det

    def to_json_obj(self) -> dict:
        return {
            "x": self.x.to_json_obj(), "y": self.y.to_json_obj(),
            "trace": self.trace.to_json_obj(), "det": self.det.to_json_obj(),
            "class": self.classification.value, "role": self.role,
            "multiplicity": self.multiplicity,
        }


def _trace_det(p: ModelParams, x):
    """Trace and determinant of the quintic field's Jacobian at ``(x, x)``."""
    K, b, s = p.K, p.b, p.s
    x2 = x * x
    dissipation = 3 * x2 * x + K * (s - 2) * x2 + b * x + K * b * s
    trace = -(x * dissipation)
    det = K * s * x2 * x * (x2 + b) * (3 * x2 - 2 * K * x + K * b + K - 1)
    return trace, det


def _classify(trace, det) -> EquilibriumClass:
    d = det.sign()
    if d == 0:
        return EquilibriumClass.DEGENERATE
    if d < 0:
        return EquilibriumClass.HYPERBOLIC_SADDLE
    t = trace.sign()
    if t == 0:
        return EquilibriumClass.WEAK_FOCUS_OR_CENTER
    node = (trace * trace - 4 * det).sign() >= 0
    if t < 0:
        return EquilibriumClass.STABLE_NODE if node else EquilibriumClass.STABLE_FOCUS
    return EquilibriumClass.UNSTABLE_NODE if node else EquilibriumClass.UNSTABLE_FOCUS


def classify_equilibrium(params, eq) -> EquilibriumClass:
    """Type and stability of ``eq`` from the exact trace and determinant.

    Nodes and foci are split by the sign of ``trace^2 - 4 det``; a zero trace
    with positive determinant is a weak focus or centre.
    """
    x = eq.x if isinstance(eq, Equilibrium) else eq
    x = x if isinstance(x, QuadSurd) else QuadSurd(exact(x))
    trace, det = _trace_det(_as_model(params), x)
    return _classify(trace, det)


def _make(p, x, role, multiplicity=1):
    trace, det = _trace_det(p, x)
    return Equilibrium(x, x, trace, det, _classify(trace, det), role, multiplicity)


def find_positive_equilibria(params) -> list:
    """Positive equilibria sorted by abscissa.

    They are the roots of ``(x - 1)(x^2 - (K-1) x + K b)`` in ``(0, K)``, each
    with ``y = x``. Coincident roots are returned once, with their
    multiplicity, and classify as degenerate.
    """
    p = _as_model(params)
    K, b = p.K, p.b
    disc = (K - 1) ** 2 - 4 * K * b
    one = QuadSurd(1)
    roots = {}

    def add(x):
        for key in roots:
            if key == x:
                roots[key] += 1
                return
        roots[x] = 1

    add(one)
    if disc >= 0:
        r = QuadSurd.sqrt(disc)
        half = Fraction(1, 2)
        add((K - 1 - r) * half)
        if disc > 0:
            add((K - 1 + r) * half)
        else:
            roots[next(k for k in roots if k == (K - 1 - r) * half)] += 1
    positives = sorted((x for x in roots if 0 < x < K), key=float)
    if len(positives) == 1:
        roles = ["unique"]
    elif len(positives) == 2:
        roles = ["first", "second"]
    else:
        roles = ["first", "second", "third"]
    return [_make(p, x, role, roots[x]) for x, role in zip(positives, roles)]


def boundary_equilibrium(params) -> Equilibrium:
    """The prey-only equilibrium ``(K, 0)``, always a hyperbolic saddle."""
    p = _as_model(params)
    K, b, s = p.K, p.b, p.s
    dxx = -(K * K + b) * K * K
    dyy = K * K * s * (K * K + b)
    trace, det = QuadSurd(dxx + dyy), QuadSurd(dxx * dyy)
    return Equilibrium(QuadSurd(K), QuadSurd(0), trace, det, _classify(trace, det), "boundary")


@dataclass(frozen=True)
class HopfThresholds:
    """``s_star`` zeroes the trace at ``(1, 1)``; ``s1 < s2`` bound the focus range."""

    s_star: QuadSurd
    s1: QuadSurd
    s2: QuadSurd

    def to_json_obj(self) -> dict:
        return {k: getattr(self, k).to_json_obj() for k in ("s_star", "s1", "s2")}


def focus_discriminant(K, b) -> MultiPoly:
    """``trace^2 - 4 det`` at ``(1, 1)`` as a polynomial in ``s``."""
    K, b = exact(K), exact(b)
    s = MultiPoly.var("s")
    return (K ** 2 * (b + 1) ** 2 * s * s - 2 * K * (b + 1) * (2 * K * b - b + 1) * s
            + (2 * K - b - 3) ** 2)


def hopf_thresholds(K, b) -> HopfThresholds:
    """Critical ``s`` values for the unit equilibrium when it is an anti-saddle."""
    K, b = exact(K), exact(b)
    w = K * b - K + 2
    if w <= 0:
        raise NotAntiSaddle(f"K b - K + 2 = {w} is not positive")
    centre = (2 * K * b - b + 1) / (K * (b + 1))
    spread = QuadSurd(0, 2 / (K * (b + 1)), (b + 1) * (K - 1) * w)
    s_star = QuadSurd((2 * K - b - 3) / (K * (b + 1)))
    return HopfThresholds(s_star, centre - spread, centre + spread)


def simultaneous_hopf_params(alpha):
    """``(s0, beta0)`` zeroing the trace at both anti-saddles of the family.

    Both values lie in ``Q(sqrt(w))`` with
    ``w = 9a^4 + 20a^3 + 18a^2 + 12a + 9``; ``beta0`` is the positive root of
    ``(a+3) B^2 - (a^2 - 4a - 3) B - 2a^3 - a^2 + a``.
    """
    a = exact(alpha)
    if not a > 1:
        raise DomainError(f"alpha must exceed 1, got {a}")
    root_w = QuadSurd.sqrt(9 * a ** 4 + 20 * a ** 3 + 18 * a ** 2 + 12 * a + 9)
    beta0 = (root_w + (a * a - 4 * a - 3)) / (2 * (a + 3))
    num = (root_w * (5 * a - 3) + (17 * a ** 3 + 19 * a ** 2 + 9 * a - 9)) * 2
    den = (root_w + (a * a - 2 * a + 3)) * (root_w + (3 * a * a + 4 * a + 3))
    return num / den, beta0
