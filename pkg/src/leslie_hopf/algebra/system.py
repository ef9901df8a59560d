"""Real solutions of zero-dimensional bivariate polynomial systems.

Both coordinates are projected by resultants, every pair of projected roots is
a candidate box, and each candidate is settled exactly: a centered-form
enclosure that misses zero excludes it, and a preconditioned Poincare-Miranda
test on an inflated box includes it. Inflation is only allowed while Sturm
counts show the inflated intervals still isolate the same projected roots, so
a solution found there is the one inside the original box.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import DimensionError, Inconclusive
from . import upoly
from .elimination import resultant
from .intervals import IntervalBox, bounds_on_box, range_on_box
from .poly import MultiPoly

__all__ = ["isolate_system", "Projection"]

DEFAULT_WIDTH = Fraction(1, 2 ** 64)
DEFAULT_BUDGET = 64


class Projection:
    """A squarefree univariate polynomial with one isolating interval per root."""

    def __init__(self, var, poly: MultiPoly):
        self.var = var
        self.poly = poly
        dense = poly.to_dense(var) if poly.free_variables() else [poly.constant_value()]
        self.sq = upoly.squarefree(dense)
        self.chain = upoly.sturm_chain(self.sq) if upoly.degree(self.sq) > 0 else [self.sq]

    def roots(self, lo=None, hi=None):
        if upoly.degree(self.sq) <= 0:
            return []
        return [list(ab) for ab in upoly.isolate(self.sq, lo, hi, Fraction(1, 16))]

    def halve(self, root):
        lo, hi = root
        if lo != hi:
            root[0], root[1] = upoly.refine(self.sq, lo, hi, (hi - lo) / 2)

    def shrink(self, root, width):
        lo, hi = root
        if lo != hi and hi - lo > width:
            root[0], root[1] = upoly.refine(self.sq, lo, hi, width)

    def closed_count(self, lo, hi) -> int:
        n = upoly.count_roots(self.chain, lo, hi)
        return n + (upoly.sign_at(self.sq, lo) == 0)


def _project(f, g, eliminate, keep):
    """A nonzero polynomial in ``keep`` vanishing at every common zero's ``keep``-coordinate."""
    f_has = f.degree(eliminate) > 0
    g_has = g.degree(eliminate) > 0
    if not f_has and not g_has:
        # both free of the eliminated variable: its value is unconstrained
        raise DimensionError(f"system does not determine {eliminate}")
    if not f_has:
        r = f
    elif not g_has:
        r = g
    else:
        r = resultant(f, g, eliminate)
    if r.is_zero():
        raise DimensionError(f"resultant in {eliminate} vanishes identically")
    extra = [v for v in r.free_variables() if v != keep]
    if extra:
        raise DimensionError(f"projection still involves {extra}")
    return r.with_variables((keep,))


def _excludes_zero(p, box) -> bool:
    lo, hi = range_on_box(p, box)
    return lo > 0 or hi < 0


def _constraint_sign(p, box):
    """+1/-1 when decided on the whole box, else 0."""
    free = p.free_variables()
    if all(box[v][0] > 0 for v in free):
        lo, hi = bounds_on_box(p, box)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
    lo, hi = range_on_box(p, box)
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    return 0


def _face_sign(p, box):
    lo, hi = range_on_box(p, box)
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    return 0


def _miranda(f, g, box, x1, x2) -> bool:
    """Poincare-Miranda with Jacobian-inverse, identity and swapped pairings."""
    c = box.center()
    cf = {k: float(v) for k, v in c.items()}
    j11, j12 = f.diff(x1).evaluate_float(cf), f.diff(x2).evaluate_float(cf)
    j21, j22 = g.diff(x1).evaluate_float(cf), g.diff(x2).evaluate_float(cf)
    det = j11 * j22 - j12 * j21
    candidates = []
    if det != 0 and abs(det) > 1e-300:
        inv = [[j22 / det, -j12 / det], [-j21 / det, j11 / det]]
        scale = max(abs(v) for row in inv for v in row) or 1.0

        def q(v):
            return Fraction(v / scale).limit_denominator(10 ** 15)

        candidates.append((f * q(inv[0][0]) + g * q(inv[0][1]), f * q(inv[1][0]) + g * q(inv[1][1])))
    candidates.append((f, g))
    candidates.append((g, f))
    (a1, b1), (a2, b2) = box[x1], box[x2]
    for p1, p2 in candidates:
        left = _face_sign(p1, box.replace(x1, a1, a1))
        right = _face_sign(p1, box.replace(x1, b1, b1))
        if not left or not right or left == right:
            continue
        bottom = _face_sign(p2, box.replace(x2, a2, a2))
        top = _face_sign(p2, box.replace(x2, b2, b2))
        if bottom and top and bottom != top:
            return True
    return False


def _point_fiber(f, g, fixed_var, value, free_var, proj: Projection, root):
    """Exact test for a solution with ``fixed_var == value`` inside ``root``'s interval."""
    fa = f.subs({fixed_var: value}).with_variables((free_var,))
    ga = g.subs({fixed_var: value}).with_variables((free_var,))
    if fa.is_zero() and ga.is_zero():
        raise DimensionError(f"whole line {fixed_var} = {value} solves the system")
    dense = [d.to_dense(free_var) if not d.is_zero() else [] for d in (fa, ga)]
    common = dense[0] if not dense[1] else dense[1] if not dense[0] else upoly.poly_gcd(*dense)
    common = upoly.trim(common)
    if upoly.degree(common) <= 0:
        return False
    lo, hi = root
    sq = upoly.squarefree(common)
    chain = upoly.sturm_chain(sq)
    return upoly.count_roots(chain, lo, hi) + (upoly.sign_at(sq, lo) == 0) > 0


def _vanishes_at_solution(c, f, g, roles) -> bool:
    """Prove ``c = 0`` at the unique solution of ``f = g = 0`` in the current box.

    Works when ``c`` is linear in one coordinate ``v``, ``c = a(u) v + r(u)``:
    eliminating ``v`` from ``f`` and ``g`` along the curve ``c = 0`` gives
    univariate polynomials whose common root in ``u``'s interval, together
    with ``v = -r/a`` landing in an interval isolating ``v``'s projected root,
    pins down a solution on ``c = 0`` that must be the box's solution.
    """
    for (v, pv, rv), (u, pu, ru) in (roles, roles[::-1]):
        if c.degree(v) != 1 or any(w not in (u, v) for w in c.free_variables()):
            continue
        r, a = c.coefficients_in(v)
        ubox = IntervalBox([(u, tuple(ru))])
        alo, ahi = range_on_box(a, ubox) if ru[0] != ru[1] else (a.evaluate({u: ru[0]}),) * 2
        if alo <= 0 <= ahi:
            continue

        def along(p):
            coeffs = p.coefficients_in(v)
            d = len(coeffs) - 1
            acc = MultiPoly.const(0, p.variables)
            for k, ck in enumerate(coeffs):
                acc = acc + ck * (-r) ** k * a ** (d - k)
            return acc.with_variables((u,)) if acc.free_variables() else acc

        fu, gu = along(f), along(g)
        dense = [p.to_dense(u) if not p.is_zero() else [] for p in (fu, gu)]
        if not dense[0] and not dense[1]:
            continue
        common = dense[0] if not dense[1] else dense[1] if not dense[0] else upoly.poly_gcd(*dense)
        common = upoly.trim(common)
        if upoly.degree(common) <= 0:
            continue
        sq = upoly.squarefree(common)
        lo, hi = ru
        if upoly.count_roots(upoly.sturm_chain(sq), lo, hi) + (upoly.sign_at(sq, lo) == 0) == 0:
            continue
        # the solution on c = 0 has u = u*; check its v lies where only v* can be
        if ru[0] == ru[1]:
            val = -r.evaluate({u: ru[0]}) / a.evaluate({u: ru[0]})
            vlo = vhi = Fraction(val)
        else:
            rlo, rhi = range_on_box(-r, ubox)
            qs = [rlo / alo, rlo / ahi, rhi / alo, rhi / ahi]
            vlo, vhi = min(qs), max(qs)
        w = rv[1] - rv[0]
        for grow in (w, 4 * w, 16 * w):
            big = (rv[0] - grow, rv[1] + grow)
            if pv.closed_count(*big) != 1:
                break
            if big[0] <= vlo and vhi <= big[1]:
                return True
    return False


def _normalize_constraints(constraints):
    out = []
    for item in constraints or ():
        if isinstance(item, MultiPoly):
            out.append((item, 1))
            continue
        poly, sign = item
        if sign in (">", ">0", "+", "positive"):
            sign = 1
        elif sign in ("<", "<0", "-", "negative"):
            sign = -1
        if sign not in (1, -1):
            raise ValueError(f"constraint sign must be +1 or -1, got {sign!r}")
        out.append((poly, sign))
    return out


def isolate_system(chain, constraints=(), width=DEFAULT_WIDTH, variables=None, search=None,
                   budget: int = DEFAULT_BUDGET, report: dict | None = None) -> list:
    """Isolating boxes for the real solutions of ``f = g = 0`` meeting strict sign constraints.

    ``chain`` is the pair ``(f, g)``; ``constraints`` holds polynomials required
    to be positive or ``(poly, sign)`` pairs with ``sign`` in ``{+1, -1}``.
    ``search`` optionally restricts each coordinate to a closed interval.
    Every returned box has sides of width at most ``width``, contains exactly
    one solution and decides every constraint sign on the whole box.

    Raises :class:`DimensionError` for positive-dimensional input and
    :class:`Inconclusive` when a candidate or constraint stays undecided after
    ``budget`` halvings beyond the requested width.
    """
    f, g = chain
    if variables is None:
        seen = []
        for p in (f, g):
            for v in p.free_variables():
                if v not in seen:
                    seen.append(v)
        variables = tuple(seen)
    variables = tuple(variables)
    if len(variables) != 2:
        raise DimensionError(f"expected a bivariate system, got variables {variables}")
    x1, x2 = variables
    f = f.with_variables(variables)
    g = g.with_variables(variables)
    if f.is_zero() or g.is_zero():
        raise DimensionError("a zero equation leaves a positive-dimensional solution set")
    width = Fraction(width)
    cons = [(p.with_variables(variables), s) for p, s in _normalize_constraints(constraints)]

    def bounds(var):
        if search is None or var not in search.variables:
            return None, None
        return search[var]

    p1 = Projection(x1, _project(f, g, x2, x1))
    p2 = Projection(x2, _project(f, g, x1, x2))
    roots1 = p1.roots(*bounds(x1))
    roots2 = p2.roots(*bounds(x2))
    stats = {"projection_degrees": [upoly.degree(p1.sq), upoly.degree(p2.sq)],
             "projected_roots": [len(roots1), len(roots2)], "candidates": len(roots1) * len(roots2),
             "excluded": 0, "constraint_rejected": 0, "boundary_rejected": 0, "solutions": 0}

    def halve(r1, r2):
        p1.halve(r1)
        p2.halve(r2)

    def box_of(r1, r2):
        return IntervalBox([(x1, tuple(r1)), (x2, tuple(r2))])

    def extra_steps(r1, r2):
        return max(r1[1] - r1[0], r2[1] - r2[0]) <= width

    found = []
    for root1 in roots1:
        for root2 in roots2:
            r1, r2 = list(root1), list(root2)
            spent = 0
            verdict = None
            while verdict is None:
                box = box_of(r1, r2)
                if _excludes_zero(f, box) or _excludes_zero(g, box):
                    verdict = "excluded"
                    break
                if any(_constraint_sign(p, box) == -s for p, s in cons):
                    verdict = "rejected"
                    break
                if r1[0] == r1[1] and r2[0] == r2[1]:
                    pt = {x1: r1[0], x2: r2[0]}
                    verdict = "solution" if f.evaluate(pt) == 0 == g.evaluate(pt) else "excluded"
                    break
                if r1[0] == r1[1]:
                    verdict = "solution" if _point_fiber(f, g, x1, r1[0], x2, p2, r2) else "excluded"
                    break
                if r2[0] == r2[1]:
                    verdict = "solution" if _point_fiber(f, g, x2, r2[0], x1, p1, r1) else "excluded"
                    break
                w1, w2 = r1[1] - r1[0], r2[1] - r2[0]
                big1 = (r1[0] - w1 / 2, r1[1] + w1 / 2)
                big2 = (r2[0] - w2 / 2, r2[1] + w2 / 2)
                if (p1.closed_count(*big1) == 1 and p2.closed_count(*big2) == 1
                        and _miranda(f, g, IntervalBox([(x1, big1), (x2, big2)]), x1, x2)):
                    verdict = "solution"
                    break
                if extra_steps(r1, r2):
                    roles = ((x1, p1, r1), (x2, p2, r2))
                    if any(not _constraint_sign(p, box) and _vanishes_at_solution(p, f, g, roles)
                           for p, _ in cons):
                        verdict = "boundary"
                        break
                    spent += 1
                    if spent > budget:
                        raise Inconclusive(f"candidate near {x1}~{float(r1[0]):.12g}, "
                                           f"{x2}~{float(r2[0]):.12g} undecided after {budget} halvings")
                halve(r1, r2)
            if verdict == "excluded":
                stats["excluded"] += 1
                continue
            if verdict == "rejected":
                stats["constraint_rejected"] += 1
                continue
            if verdict == "boundary":
                stats["boundary_rejected"] += 1
                continue
            # a solution: shrink to the requested width, then settle every constraint
            p1.shrink(r1, width)
            p2.shrink(r2, width)
            spent = 0
            on_boundary = False
            while True:
                signs = [_constraint_sign(p, box_of(r1, r2)) for p, _ in cons]
                if all(signs):
                    break
                roles = ((x1, p1, r1), (x2, p2, r2))
                if any(not sg and _vanishes_at_solution(p, f, g, roles) for sg, (p, _) in zip(signs, cons)):
                    on_boundary = True
                    break
                spent += 1
                if spent > budget or (r1[0] == r1[1] and r2[0] == r2[1]):
                    raise Inconclusive(f"constraint sign undecided at {x1}~{float(r1[0]):.12g}, "
                                       f"{x2}~{float(r2[0]):.12g}")
                halve(r1, r2)
            if on_boundary:
                stats["boundary_rejected"] += 1
                continue
            if any(sg != s for sg, (_, s) in zip(signs, cons)):
                stats["constraint_rejected"] += 1
                continue
            stats["solutions"] += 1
            found.append(box_of(r1, r2))
    found.sort(key=lambda b: (b[x1][0], b[x2][0]))
    if report is not None:
        report.update(stats)
    return found
