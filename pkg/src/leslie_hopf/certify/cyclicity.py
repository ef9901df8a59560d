"""Exact replays of the Hopf-cyclicity arguments.

Each function returns a :class:`Certificate` whose steps are exact checks on
the embedded focal-value polynomials: resultants, Sturm counts, isolating
boxes of bivariate systems, and monotone sign bounds on those boxes.
"""
from __future__ import annotations

from fractions import Fraction

from ..algebra import (MultiPoly, Sign, decide_sign, isolate_system, parse, pseudo_divide,
                       resultant, sturm_count)
from ..errors import Inconclusive
from ..lyapunov import reference_data as data
from ..lyapunov.reference import alpha_beta_traces
from ..model import simultaneous_hopf_params
from .certificate import Certificate

__all__ = ["DEFAULT_CERT_WIDTH", "certify_unique_cyclicity", "certify_first_equilibrium",
           "certify_third_equilibrium", "certify_simultaneous_hopf", "recover_phi3"]

# Tight enough that every isolating box nests inside boxes published at
# accuracy 1e-20 (the narrowest side among them is 2^-88).
DEFAULT_CERT_WIDTH = Fraction(1, 2 ** 100)

_KB = ("K", "b")


def _kb(text: str) -> MultiPoly:
    return parse(text, _KB)


def _k_factor(*texts) -> MultiPoly:
    out = MultiPoly.const(1, ("K",))
    for t in texts:
        out = out * parse(t, ("K",))
    return out


def _resultant_cofactor(res: MultiPoly):
    """``res / (c K^3 (K-1)^13 (K-3)^2 phi1 phi2^2)`` or ``None`` if inexact.

    The cofactor must be a primitive integer polynomial with positive leading
    coefficient; otherwise the constant ``c`` would not be pinned down.
    """
    known = _k_factor("K", "K", "K") * _k_factor(*["K-1"] * 13) * _k_factor("K-3", "K-3") \
        * data.phi1() * data.phi2() * data.phi2() * data.RESULTANT_CONSTANT
    try:
        cof = res.with_variables(("K",)).divide_exact(known)
    except (ArithmeticError, ValueError):
        return None
    if cof.is_zero() or cof != cof.primitive() or cof.to_dense("K")[-1] < 0:
        return None
    return cof


def recover_phi3(upsilon1=None, upsilon2=None) -> MultiPoly:
    """The degree-13 factor of ``Res_b(upsilon1, upsilon2)`` left after the
    reference factors are divided out."""
    u1 = data.upsilon1() if upsilon1 is None else upsilon1
    u2 = data.upsilon2() if upsilon2 is None else upsilon2
    cof = _resultant_cofactor(resultant(u1, u2, "b"))
    if cof is None:
        raise ArithmeticError("the resultant does not carry the expected factors")
    return cof


def _isolate(cert, case, chain, constraints, width, names):
    """Run :func:`isolate_system`, recording the outcome; ``None`` if undecided."""
    report = {}
    try:
        boxes = isolate_system(chain, constraints, width, variables=_KB, report=report)
    except Inconclusive as exc:
        cert.add(case, f"isolate {names}", None, reason=str(exc))
        return None
    cert.add(case, f"isolate {names} under the regime constraints", True,
             solutions=len(boxes), boxes=boxes, report=report)
    return boxes


def _upsilon2_positive(cert, case, u2, boxes, label):
    for box in boxes:
        detail = {}
        try:
            sign = decide_sign(u2, box, evidence=detail)
        except Inconclusive as exc:
            cert.add(case, f"sign of upsilon2 at {label}", None, box=box, reason=str(exc))
            continue
        cert.add(case, f"upsilon2 > 0 at {label}", sign is Sign.POSITIVE,
                 box=box, sign=sign, bisections=detail.get("bisections", 0))


def _unique_constraints():
    return [_kb("4*K*b-(K-1)^2"), _kb("K*b-K+2"), _kb("2*K-b-3")]


def certify_unique_cyclicity(width=DEFAULT_CERT_WIDTH, upsilon1=None, upsilon2=None,
                             resultant_fn=resultant) -> Certificate:
    """``upsilon1`` and ``upsilon2`` have no common zero in the unique-equilibrium
    weak-focus regime, so the unit equilibrium is a weak focus of order <= 2.

    ``upsilon1``, ``upsilon2`` and ``resultant_fn`` exist so tests can inject
    faults and watch the verdict change.
    """
    u1 = data.upsilon1() if upsilon1 is None else upsilon1.with_variables(_KB)
    u2 = data.upsilon2() if upsilon2 is None else upsilon2.with_variables(_KB)
    width = Fraction(width)
    cert = Certificate("unique-cyclicity",
                       "the unique positive equilibrium is a weak focus of order at most 2")
    cons = _unique_constraints()

    res = resultant_fn(u1, u2, "b")
    cof = _resultant_cofactor(res)
    ok = cof is not None and cof.degree() == 13
    cert.add("0-resultant", "Res_b(upsilon1, upsilon2) = -3221225472 K^3 (K-1)^13 (K-3)^2 "
             "phi1 phi2^2 phi3", ok, degree=res.degree(), phi3=cof)

    # K = 3: upsilon1 has exactly one positive root, b = 1/3, where Kb - K + 2 = 0
    at3 = u1.subs({"K": 3})
    positive = sturm_count(at3, (0, None))
    root_third = at3.evaluate({"b": Fraction(1, 3)}) == 0
    in_regime = sturm_count(at3, (Fraction(1, 3), 3))
    cert.add("i-K=3", "upsilon1(3, b) vanishes for b > 0 only at b = 1/3, outside Kb-K+2 > 0",
             positive == 1 and root_third and in_regime == 0,
             positive_roots=positive, vanishes_at_one_third=root_third,
             roots_in_regime=in_regime)
    if not ok:
        # cases ii-iv need phi3, which only exists when the resultant factors as expected
        return cert

    for case, phi, label in (("ii-phi1", data.phi1(), "(K1, b1)"),
                             ("iii-phi2", data.phi2(), None),
                             ("iv-phi3", cof, "(K2, b2)")):
        boxes = _isolate(cert, case, (phi.with_variables(_KB), u1), cons, width,
                         "{phi, upsilon1}")
        if boxes is None:
            continue
        expected = 0 if label is None else 1
        cert.add(case, f"exactly {expected} constrained common root", len(boxes) == expected,
                 found=len(boxes))
        if label is not None:
            _upsilon2_positive(cert, case, u2, boxes, label)
    return cert


def certify_first_equilibrium(width=DEFAULT_CERT_WIDTH) -> Certificate:
    """With three equilibria the first one is a weak focus of order at most 2,
    and order 2 is attained at a point ``(K3, b3)``."""
    u1, u2 = data.upsilon1(), data.upsilon2()
    width = Fraction(width)
    cert = Certificate("first-equilibrium-cyclicity",
                       "with three positive equilibria the first is a weak focus of order "
                       "at most 2, and order 2 occurs")
    cons = [_kb("K-3"), _kb("K*b-K+2"), _kb("2*K-b-3"), _kb("(K-1)^2-4*K*b")]
    boxes = _isolate(cert, "a-no-common-root", (u1, u2), cons, width, "{upsilon1, upsilon2}")
    if boxes is not None:
        cert.add("a-no-common-root", "no constrained common root", not boxes, found=len(boxes))
    boxes = _isolate(cert, "b-order-two", (data.phi1().with_variables(_KB), u1), cons, width,
                     "{phi1, upsilon1}")
    if boxes is not None:
        cert.add("b-order-two", "exactly 1 constrained common root", len(boxes) == 1,
                 found=len(boxes))
        _upsilon2_positive(cert, "b-order-two", u2, boxes, "(K3, b3)")
    return cert


def _restrict(p: MultiPoly, num: MultiPoly, den: MultiPoly, var="b") -> MultiPoly:
    """``den^d * p(..., var = num/den)`` with ``d = deg_var p``, as a polynomial."""
    d = p.degree(var)
    rest = [v for v in p.variables if v != var]
    out = MultiPoly.const(0, rest)
    for k, coeff in enumerate(p.coefficients_in(var)):
        if not coeff.is_zero():
            out = out + coeff.with_variables(rest) * num ** k * den ** (d - k)
    return out


def _sign_on(cert, case, poly, lo, hi, want: int, closed=True):
    """``poly`` has sign ``want`` on ``[lo, hi]`` (or the open interval)."""
    count = sturm_count(poly, (lo, hi))
    mid = poly.evaluate({poly.variables[0]: (Fraction(lo) + Fraction(hi)) / 2})
    ends = [poly.evaluate({poly.variables[0]: Fraction(e)}) for e in (lo, hi)]
    ok = count == 0 and (mid > 0 if want > 0 else mid < 0)
    if closed:
        ok = ok and all((e > 0 if want > 0 else e < 0) for e in ends)
    word = "> 0" if want > 0 else "< 0"
    where = f"[{lo}, {hi}]" if closed else f"({lo}, {hi})"
    cert.add(case, f"{poly} {word} on {where}", ok, roots=count, midpoint_value=mid,
             endpoint_values=ends)
    return ok


def certify_third_equilibrium(width=Fraction(1, 2 ** 64)) -> Certificate:
    """``upsilon1 > 0`` on the three-equilibrium region with ``1 < K < 3``, so
    the third equilibrium is an unstable weak focus of order one there."""
    u1 = data.upsilon1()
    cert = Certificate("third-equilibrium-stability",
                       "upsilon1 > 0 inside the region 1 < K < 3 with three equilibria; "
                       "its minimum 0 over the closure is attained only at (3, 1/3)")
    cons = [_kb("K-1"), _kb("3-K"), _kb("b"), _kb("K*b-K+2"), _kb("2*K-b-3"),
            _kb("(K-1)^2-4*K*b")]
    boxes = _isolate(cert, "1-interior", (u1.diff("K"), u1.diff("b")), cons, Fraction(width),
                     "{d upsilon1/dK, d upsilon1/db}")
    if boxes is not None:
        cert.add("1-interior", "no critical point of upsilon1 inside the region", not boxes,
                 found=len(boxes))

    K = MultiPoly.var("K", ("K",))
    one = MultiPoly.const(1, ("K",))
    zero_b = u1.subs({"b": 0})
    cert.add("2a-b=0", "upsilon1(K, 0) = 3", zero_b == MultiPoly.const(3, zero_b.variables),
             value=zero_b)

    lower = _restrict(u1, K - 2, K)
    target = 8 * K * (K - 1) ** 2 * (K - 3) * ((K - 1) * (K - 3) - 2)
    cert.add("2b-b=1-2/K", "K^4 upsilon1(K, 1-2/K) = 8 K (K-1)^2 (K-3) ((K-1)(K-3)-2)",
             lower == target, restricted=lower)
    _sign_on(cert, "2b-b=1-2/K", target.divide_exact(8 * K), 2, 3, +1, closed=False)

    psi1 = data.psi1()
    upper = _restrict(u1, (K - 1) ** 2, 4 * K)
    cert.add("2c-b=(K-1)^2/(4K)", "(4K)^4 upsilon1(K, (K-1)^2/(4K)) = K (K-3) Psi1",
             upper == K * (K - 3) * psi1, restricted=upper)
    _sign_on(cert, "2c-b=(K-1)^2/(4K)", psi1, Fraction(3, 2), 3, -1)

    psi2 = data.psi2()
    edge = _restrict(u1, 2 * K - 3, one)
    cert.add("2d-b=2K-3", "upsilon1(K, 2K-3) = 32 (K-1)^2 Psi2", edge == 32 * (K - 1) ** 2 * psi2,
             restricted=edge)
    _sign_on(cert, "2d-b=2K-3", psi2, Fraction(3, 2), Fraction(11, 7), +1)

    corner = u1.evaluate({"K": 3, "b": Fraction(1, 3)})
    cert.add("3-corner", "upsilon1(3, 1/3) = 0", corner == 0, value=corner)
    return cert


def _positive_beyond_one(cert, case, poly):
    """No root in ``(1, oo)`` and positive at 2, hence positive on ``(1, oo)``."""
    var = poly.variables[0]
    count = sturm_count(poly, (1, None))
    at_two = poly.evaluate({var: 2})
    cert.add(case, f"{poly} > 0 for {var} > 1", count == 0 and at_two > 0,
             roots_beyond_one=count, value_at_two=at_two)


def certify_simultaneous_hopf() -> Certificate:
    """At ``(s0, beta0)`` both outer anti-saddles are unstable weak foci of order
    one, and moving ``s`` past ``s0`` sheds a cycle from each."""
    cert = Certificate("simultaneous-hopf",
                       "at (s0, beta0) the first and third equilibria are unstable weak foci "
                       "of order one and one limit cycle bifurcates from each")
    ab = ("alpha", "beta")
    F1, G1, Phi = data.f1(), data.g1(), data.phi()
    alpha = MultiPoly.var("alpha", ab)
    beta = MultiPoly.var("beta", ab)

    # (1) F1 > 0 on Phi = 0
    mult, quot, rem = pseudo_divide(F1, Phi, "beta")
    h1 = data.h1().with_variables(ab)
    h2 = data.h2().with_variables(ab)
    cert.add("1-F1", "pseudo-division multiplier is (alpha+3)^4",
             mult.with_variables(ab) == (alpha + 3) ** 4, multiplier=mult)
    cert.add("1-F1", "remainder of F1 by Phi is (alpha+1)^3 (h1 beta + h2)",
             rem.with_variables(ab) == (alpha + 1) ** 3 * (h1 * beta + h2), remainder=rem,
             quotient_terms=quot.nterms())
    h3 = (data.h1() * MultiPoly.var("alpha", ("alpha",)) + data.h2())
    cert.add("1-F1", "h1 alpha + h2 equals the embedded h3", h3 == data.h3(), h3=h3)
    _positive_beyond_one(cert, "1-F1", data.h1())
    _positive_beyond_one(cert, "1-F1", data.h3())

    # (2) G1 > 0 for 1 < alpha < beta through alpha = (eps + beta)/(eps + 1), eps > 0
    eb = ("eps", "beta")
    eps = MultiPoly.var("eps", eb)
    bet = MultiPoly.var("beta", eb)
    deg = G1.degree("alpha")
    cleared = MultiPoly.const(0, eb)
    for k, coeff in enumerate(G1.coefficients_in("alpha")):
        if not coeff.is_zero():
            cleared = cleared + coeff.with_variables(eb) * (eps + bet) ** k * (eps + 1) ** (deg - k)
    try:
        gbar = cleared.divide_exact(bet - 1)
        divides = True
    except ArithmeticError:
        gbar, divides = cleared, False
    cert.add("2-G1", f"(eps+1)^{deg} G1 = (beta-1) Gbar1", divides)
    coeffs = [c.with_variables(("beta",)) for c in gbar.coefficients_in("eps")]
    embedded = list(data.g1_bar_coefficients())
    cert.add("2-G1", "Gbar1 coefficients in eps match the embedded ones", coeffs == embedded,
             computed=coeffs)
    for k, c in enumerate(coeffs):
        _positive_beyond_one(cert, f"2-G1-eps{k}", c)

    # (3) both traces vanish at (s0, beta0) and fall linearly as s grows
    s0, beta0 = simultaneous_hopf_params(8)
    t1, t3 = alpha_beta_traces(8, beta0, s0)
    cert.add("3-direction", "both traces vanish exactly at alpha = 8, (s0, beta0)",
             t1 == 0 and t3 == 0, s0=s0, beta0=beta0)
    phi_at = Phi.subs({"alpha": 8})
    phi_val = sum((c * beta0 ** e[0] for e, c in phi_at.items()), 0 * beta0)
    cert.add("3-direction", "Phi(8, beta0) = 0 exactly", phi_val == 0)
    abs_ = ("alpha", "beta", "s", "eps")
    a, b, s, e = (MultiPoly.var(v, abs_) for v in abs_)
    moved = [x - y for x, y in zip(alpha_beta_traces(a, b, s + e), alpha_beta_traces(a, b, s))]
    cert.add("3-direction", "trace at first equilibrium shifts by -(alpha+1)(beta+1)(alpha+beta+1) eps",
             moved[0] == -(a + 1) * (b + 1) * (a + b + 1) * e, shift=moved[0])
    cert.add("3-direction",
             "trace at third equilibrium shifts by -beta^2 (beta+1)(alpha+beta)(alpha+beta+1) eps",
             moved[1] == -b ** 2 * (b + 1) * (a + b) * (a + b + 1) * e, shift=moved[1])
    return cert
