from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from leslie_hopf.algebra import QuadSurd, parse
from leslie_hopf.errors import DomainError, NotAntiSaddle
from leslie_hopf.model import (AlphaBetaParams, EquilibriumClass, Form, ModelParams,
                               boundary_equilibrium, classify_equilibrium,
                               find_positive_equilibria, focus_discriminant, hopf_thresholds,
                               params_from_json, simultaneous_hopf_params, vector_field)
from leslie_hopf.lyapunov import alpha_beta_traces

F = Fraction
k_values = st.fractions(min_value=F(11, 10), max_value=12, max_denominator=20)
b_values = st.fractions(min_value=F(1, 50), max_value=8, max_denominator=50)
s_values = st.fractions(min_value=F(1, 50), max_value=3, max_denominator=50)


def at(poly, x, y):
    return poly.evaluate({"x": x, "y": y})


# ---------------------------------------------------------------- parameters

def test_params_validation():
    with pytest.raises(DomainError):
        ModelParams(1, 1, 1)
    with pytest.raises(DomainError):
        ModelParams(2, 0, 1)
    with pytest.raises(DomainError):
        AlphaBetaParams(3, 2, 1)


def test_decimal_strings_are_exact():
    p = ModelParams("10", "3.3675165", "0.3")
    assert p.b == F(33675165, 10 ** 7) and p.s == F(3, 10)


def test_alpha_beta_recovers_k_and_b():
    p = AlphaBetaParams(8, 12, F(3, 10))
    assert p.K == 21 and p.b == F(96, 21)


def test_params_from_json_requires_one_family():
    assert isinstance(params_from_json({"K": "4", "b": "27/50", "s": "1"}), ModelParams)
    assert isinstance(params_from_json({"alpha": 2, "beta": 3, "s": 1}), AlphaBetaParams)
    with pytest.raises(DomainError):
        params_from_json({"K": 4, "alpha": 2, "b": 1, "beta": 3, "s": 1})


def test_from_raw_reduces_to_unit_equilibrium():
    # raw system with equilibrium (2, 6): h = 3, m chosen to balance the prey equation
    r, K, b, s, h, xs = F(1, 2), F(20), F(8), F(1, 5), F(3), F(2)
    m = r * (1 - xs / K) * (xs * xs + b) / (h * xs)
    p = ModelParams.from_raw(r, K, m, b, s, h, xs)
    assert (p.K, p.b, p.s) == (10, 2, F(2, 5))
    with pytest.raises(DomainError):
        ModelParams.from_raw(r, K, m + 1, b, s, h, xs)


# ---------------------------------------------------------------- vector field

def test_quintic_field_formula():
    K, b, s = F(4), F(27, 50), F(7, 10)
    fx, fy = vector_field(ModelParams(K, b, s), Form.QUINTIC)
    xy = ("x", "y")
    assert fx == parse("(x^2 + 27/50)*(4 - x)*x^2 - 3*(77/50)*x^2*y", xy)
    assert fy == parse("4*(7/10)*y*(x - y)*(x^2 + 27/50)", xy)


@settings(max_examples=60)
@given(k_values, b_values, s_values)
def test_unit_point_is_equilibrium(K, b, s):
    p = ModelParams(K, b, s)
    for form in (Form.QUINTIC, Form.RATIONAL):
        fx, fy = vector_field(p, form)
        assert at(fx, 1, 1) == 0 and at(fy, 1, 1) == 0


def test_alpha_beta_field_vanishes_at_roots():
    fx, fy = vector_field(AlphaBetaParams(8, 12, F(3, 10)), Form.ALPHA_BETA)
    for x in (1, 8, 12):
        assert at(fx, x, x) == 0 and at(fy, x, x) == 0


def test_alpha_beta_form_is_scaled_quintic():
    ab = AlphaBetaParams(8, 12, F(3, 10))
    fx, fy = vector_field(ab, Form.ALPHA_BETA)
    qx, qy = vector_field(ab.to_model(), Form.QUINTIC)
    assert fx == ab.K * qx and fy == ab.K * qy


@settings(max_examples=1000)
@given(k_values, b_values, s_values,
       st.fractions(min_value=F(1, 100), max_value=15, max_denominator=100),
       st.fractions(min_value=F(0), max_value=15, max_denominator=100))
def test_rational_and_quintic_agree_in_sign(K, b, s, x, y):
    p = ModelParams(K, b, s)
    rx, ry = vector_field(p, Form.RATIONAL)
    qx, qy = vector_field(p, Form.QUINTIC)
    pt = {"x": x, "y": y}
    sign = lambda v: (v > 0) - (v < 0)
    assert sign(rx.evaluate(pt)) == sign(qx.evaluate(pt))
    assert sign(ry.evaluate(pt)) == sign(qy.evaluate(pt))


# ---------------------------------------------------------------- equilibria

def xs_of(p):
    return [eq.x for eq in find_positive_equilibria(p)]


def test_three_equilibria():
    eqs = find_positive_equilibria(ModelParams(4, F(54, 100), F(724026, 10 ** 6)))
    assert [e.x for e in eqs] == [1, F(6, 5), F(9, 5)]
    assert [e.role for e in eqs] == ["first", "second", "third"]
    assert eqs[1].classification is EquilibriumClass.HYPERBOLIC_SADDLE


def test_unique_equilibrium():
    assert xs_of(ModelParams(10, "3.3675165", "0.3")) == [1]


def test_triple_root_is_degenerate():
    eqs = find_positive_equilibria(ModelParams(3, F(1, 3), 1))
    assert len(eqs) == 1
    assert eqs[0].x == 1 and eqs[0].multiplicity == 3
    assert eqs[0].classification is EquilibriumClass.DEGENERATE


def test_irrational_equilibria_are_surds():
    eqs = find_positive_equilibria(ModelParams(5, F(1, 2), 1))
    outer = [e.x for e in eqs if e.x != 1]
    assert len(outer) == 2 and all(isinstance(x, QuadSurd) and x.c != 0 for x in outer)
    fx, fy = vector_field(ModelParams(5, F(1, 2), 1), Form.QUINTIC)
    for x in outer:
        # evaluate exactly in Q(sqrt d)
        for poly in (fx, fy):
            total = QuadSurd(0)
            for (i, j), c in poly.items():
                total = total + c * x ** (i + j)
            assert total == 0


def test_boundary_equilibrium_is_saddle():
    e = boundary_equilibrium(ModelParams(4, 1, 1))
    assert (e.x, e.y) == (4, 0)
    assert e.classification is EquilibriumClass.HYPERBOLIC_SADDLE


@settings(max_examples=200)
@given(k_values, b_values, s_values)
def test_equilibria_are_exact_zeros(K, b, s):
    p = ModelParams(K, b, s)
    fx, fy = vector_field(p, Form.QUINTIC)
    for eq in find_positive_equilibria(p):
        assert eq.x == eq.y and 0 < eq.x < K
        for poly in (fx, fy):
            total = QuadSurd(0)
            for (i, j), c in poly.items():
                total = total + c * eq.x ** (i + j)
            assert total == 0


@settings(max_examples=200)
@given(k_values, b_values, s_values)
def test_three_equilibria_saddle_in_the_middle(K, b, s):
    p = ModelParams(K, b, s)
    eqs = find_positive_equilibria(p)
    assume(len(eqs) == 3)
    assert eqs[1].classification is EquilibriumClass.HYPERBOLIC_SADDLE
    assert eqs[0].classification.is_anti_saddle and eqs[2].classification.is_anti_saddle


# ---------------------------------------------------------------- classification

def test_classifications_from_examples():
    p = ModelParams(10, "3.3675165", "0.3")
    assert classify_equilibrium(p, 1) is EquilibriumClass.UNSTABLE_FOCUS
    assert classify_equilibrium(ModelParams(10, F(1, 2), 1), 1) is EquilibriumClass.HYPERBOLIC_SADDLE
    assert classify_equilibrium(ModelParams(4, F(54, 100), 1), F(6, 5)) \
        is EquilibriumClass.HYPERBOLIC_SADDLE


def test_weak_focus_at_trace_zero():
    p = ModelParams.at_weak_focus(4, 2)
    assert classify_equilibrium(p, 1) is EquilibriumClass.WEAK_FOCUS_OR_CENTER


def test_saddle_iff_w_negative_on_grid():
    count = 0
    for i in range(1, 41):
        K = 1 + F(i, 4)
        for j in range(1, 26):
            b = F(j, 5)
            count += 1
            cls = classify_equilibrium(ModelParams(K, b, F(1, 2)), 1)
            assert (cls is EquilibriumClass.HYPERBOLIC_SADDLE) == (K * b - K + 2 < 0)
    assert count == 1000


# ---------------------------------------------------------------- Hopf thresholds

def test_s_star_value():
    h = hopf_thresholds(10, "3.3675165")
    assert h.s_star == (20 - F("3.3675165") - 3) / (10 * (1 + F("3.3675165")))
    assert abs(float(h.s_star) - 0.31213) < 1e-5
    assert h.s1 < h.s_star < h.s2


def test_s_star_zero_when_numerator_vanishes():
    assert hopf_thresholds(4, 5).s_star == 0


def test_thresholds_need_anti_saddle():
    with pytest.raises(NotAntiSaddle):
        hopf_thresholds(10, F(1, 2))


def test_focus_discriminant_polynomial():
    # discriminant in s of the exact expression, checked at many rational points
    for Kv in (F(3, 2), F(4), F(10)):
        for bv in (F(1, 3), F(2), F(7, 2)):
            psi = focus_discriminant(Kv, bv).to_dense("s")
            c0, c1, c2 = psi
            disc = c1 * c1 - 4 * c2 * c0
            w = Kv * bv - Kv + 2
            assert disc == 16 * Kv ** 2 * (bv + 1) ** 3 * (Kv - 1) * w


@settings(max_examples=100)
@given(k_values, b_values)
def test_thresholds_bound_focus_range(K, b):
    assume(K * b - K + 2 > 0)
    h = hopf_thresholds(K, b)
    psi = focus_discriminant(K, b)
    for s in (h.s1, h.s2):
        total = QuadSurd(0)
        for (e,), c in psi.items():
            total = total + c * s ** e
        assert total == 0


# ---------------------------------------------------------------- simultaneous Hopf

def test_simultaneous_hopf_alpha_8_s0():
    s0, beta0 = simultaneous_hopf_params(8)
    assert abs(float(s0) - 0.299318) < 1e-5
    # beta0 is 11.314152..., one less than the reference value; see test_acceptance
    assert abs(float(beta0) - 11.314152080622744) < 1e-12


_BELOW = pytest.mark.xfail(strict=True, reason="beta0 < alpha when alpha < (3+sqrt 17)/2")


@pytest.mark.parametrize("alpha", [pytest.param(2, marks=_BELOW), pytest.param(3, marks=_BELOW),
                                   5, 8, 20])
def test_beta0_exceeds_alpha(alpha):
    s0, beta0 = simultaneous_hopf_params(alpha)
    assert beta0 > alpha and s0 > 0


def test_beta0_crosses_alpha_at_exact_threshold():
    # the beta0 quadratic at B = alpha is -2 alpha (alpha^2 - 3 alpha - 2)
    threshold = QuadSurd(F(3, 2), F(1, 2), 17)
    for alpha in (F(7, 2), F(357, 100), 4, F(356, 100)):
        _, beta0 = simultaneous_hopf_params(alpha)
        assert (beta0 > alpha) == (alpha > threshold)


@pytest.mark.parametrize("alpha", [F(3, 2), 2, 3, 5, 8, 20])
def test_simultaneous_hopf_zeroes_both_traces(alpha):
    s0, beta0 = simultaneous_hopf_params(alpha)
    t1, t3 = alpha_beta_traces(alpha, beta0, s0)
    assert t1 == 0 and t3 == 0
    f1, f3 = alpha_beta_traces(float(alpha), float(beta0), float(s0))
    assert abs(f1) < 1e-12 * max(1.0, float(beta0) ** 5) and abs(f3) < 1e-12 * float(beta0) ** 5


def test_simultaneous_hopf_domain():
    with pytest.raises(DomainError):
        simultaneous_hopf_params(1)
