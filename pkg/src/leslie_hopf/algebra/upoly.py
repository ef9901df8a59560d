"""Dense univariate polynomials (ascending coefficient lists) over Z and Q.

These are the fast paths behind Sturm counting and root isolation. Sign
evaluation at a rational ``n/d`` uses the homogenised integer form
``sum a_i n^i d^(deg - i)``, which has the same sign because ``d > 0``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

__all__ = [
    "trim", "degree", "derivative", "evaluate", "sign_at", "to_integer",
    "primitive", "prem", "divmod_poly", "poly_gcd", "squarefree",
    "sturm_chain", "variations", "count_roots", "root_bound",
    "isolate", "refine",
]


def trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def degree(p) -> int:
    return len(p) - 1


def derivative(p):
    return [i * c for i, c in enumerate(p)][1:]


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_at(p, x) -> int:
    """Exact sign of ``p(x)`` for integer ``p`` and rational ``x``."""
    if not p:
        return 0
    if isinstance(x, int):
        return _sign(evaluate(p, x))
    x = Fraction(x)
    n, d = x.numerator, x.denominator
    acc = p[-1]
    dk = 1
    for c in reversed(p[:-1]):
        dk *= d
        acc = acc * n + c * dk
    return _sign(acc)


def to_integer(p):
    """Positive rational multiple of ``p`` with integer coefficients."""
    den = 1
    for c in p:
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    return [int(c * den) for c in p]


def primitive(p):
    """Divide an integer polynomial by the (positive) gcd of its coefficients."""
    p = trim(p)
    g = 0
    for c in p:
        g = gcd(g, c)
    if g <= 1:
        return p
    return [c // g for c in p]


def prem(a, b):
    """Pseudo-remainder: ``lc(b)^(deg a - deg b + 1) * a mod b`` over Z."""
    a, b = trim(a), trim(b)
    db = degree(b)
    if db < 0:
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    r = a
    k = degree(a) - db + 1
    lb = b[-1]
    while r and degree(r) >= db:
        lr = r[-1]
        shift = degree(r) - db
        r = [c * lb for c in r]
        for i, c in enumerate(b):
            r[i + shift] -= lr * c
        r = trim(r)
        k -= 1
    if k > 0:
        f = lb ** k
        r = [c * f for c in r]
    return r


def divmod_poly(a, b):
    """Quotient and remainder over Q."""
    a = [Fraction(c) for c in trim(a)]
    b = trim(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    db = degree(b)
    q = [Fraction(0)] * max(0, degree(a) - db + 1)
    lb = Fraction(b[-1])
    while a and degree(a) >= db:
        f = a[-1] / lb
        shift = degree(a) - db
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = trim(a)
    return q, a


def poly_gcd(a, b):
    """Greatest common divisor over Q, returned primitive with positive leading coefficient."""
    a = primitive(to_integer(trim(a)))
    b = primitive(to_integer(trim(b)))
    while b:
        r = primitive(prem(a, b))
        a, b = b, r
    if not a:
        return []
    if a[-1] < 0:
        a = [-c for c in a]
    return primitive(a)


def squarefree(p):
    """Primitive integer squarefree part with the sign of ``p``'s leading coefficient."""
    p = primitive(to_integer(trim(p)))
    if degree(p) <= 0:
        return p
    g = poly_gcd(p, derivative(p))
    if degree(g) == 0:
        return p
    q, r = divmod_poly(p, g)
    assert not r
    return primitive(to_integer(q))


def sturm_chain(p):
    """Sturm chain of an integer polynomial, scaled by positive factors only."""
    p = trim(p)
    chain = [p]
    if degree(p) <= 0:
        return chain
    chain.append(primitive(derivative(p)))
    while degree(chain[-1]) > 0:
        a, b = chain[-2], chain[-1]
        r = prem(a, b)
        # the pseudo-remainder multiplier lc(b)^k must not flip signs
        if b[-1] < 0 and (degree(a) - degree(b) + 1) % 2:
            r = [-c for c in r]
        r = primitive([-c for c in r])
        if not r:
            break
        chain.append(r)
    return chain


def _sign_at_infinity(p, positive: bool) -> int:
    s = _sign(p[-1])
    if not positive and degree(p) % 2:
        s = -s
    return s


def variations(chain, x) -> int:
    """Sign variations of the chain at ``x``; ``x`` may be ``+inf``/``-inf`` floats."""
    signs = []
    for q in chain:
        if not q:
            continue
        if x == float("inf"):
            s = _sign_at_infinity(q, True)
        elif x == float("-inf"):
            s = _sign_at_infinity(q, False)
        else:
            s = sign_at(q, x)
        if s:
            signs.append(s)
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_roots(chain, a, b) -> int:
    """Distinct real roots in the half-open interval ``(a, b]`` (squarefree chain)."""
    return variations(chain, a) - variations(chain, b)


def root_bound(p) -> Fraction:
    """A power of two strictly larger than every root's absolute value (Cauchy)."""
    p = trim(p)
    lead = abs(Fraction(p[-1]))
    m = max((abs(Fraction(c)) / lead for c in p[:-1]), default=Fraction(0))
    bound = 1 + m
    out = Fraction(1)
    while out <= bound:
        out *= 2
    return out


def refine(sq, a, b, width):
    """Shrink an isolating interval with a sign change by bisection.

    ``sq`` must be squarefree with exactly one root in ``(a, b)`` and nonzero
    at both ends. Returns ``(r, r)`` if a midpoint hits the root exactly.
    """
    a, b = Fraction(a), Fraction(b)
    sa = sign_at(sq, a)
    while b - a > width:
        m = (a + b) / 2
        sm = sign_at(sq, m)
        if sm == 0:
            return m, m
        if sm == sa:
            a = m
        else:
            b = m
    return a, b


_SPLITS = [Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 4), Fraction(3, 4),
           Fraction(2, 5), Fraction(3, 5)]


def _split_point(sq, a, b):
    for t in _SPLITS:
        m = a + (b - a) * t
        if sign_at(sq, m):
            return m
    k = 3
    while True:
        m = a + (b - a) / k
        if sign_at(sq, m):
            return m
        k += 1


def isolate(p, lo=None, hi=None, width=Fraction(1, 2 ** 64)):
    """Isolate the distinct real roots of ``p`` in the closed interval ``[lo, hi]``.

    ``None`` endpoints mean unbounded. Returns sorted, pairwise-disjoint closed
    intervals ``(a, b)``; each contains exactly one root, has width at most
    ``width`` and is either a point (an exact rational root) or has ``p``
    nonzero at both ends.
    """
    sq = squarefree(p)
    if degree(sq) < 0:
        raise ValueError("cannot isolate the roots of the zero polynomial")
    if degree(sq) == 0:
        return []
    width = Fraction(width)
    bound = root_bound(sq)
    lo = -bound if lo is None else max(Fraction(lo), -bound)
    hi = bound if hi is None else min(Fraction(hi), bound)
    if lo > hi:
        return []
    chain = sturm_chain(sq)
    out = []
    if sign_at(sq, lo) == 0:
        out.append((lo, lo))
    if lo == hi:
        return out
    stack = [(lo, hi, count_roots(chain, lo, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            if sign_at(sq, b) == 0:
                out.append((b, b))
                continue
            if sign_at(sq, a) != 0:
                out.append(refine(sq, a, b, width))
                continue
        m = _split_point(sq, a, b)
        left = count_roots(chain, a, m)
        stack.append((m, b, n - left))
        stack.append((a, m, left))
    out.sort()
    # neighbours may share a (non-root) bisection point; shrink until apart
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            (a0, b0), (a1, b1) = out[i], out[i + 1]
            if b0 >= a1:
                if a0 != b0:
                    out[i] = refine(sq, a0, b0, (b0 - a0) / 2)
                if a1 != b1:
                    out[i + 1] = refine(sq, a1, b1, (b1 - a1) / 2)
                changed = True
    return out
