import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from leslie_hopf.algebra import isolate_roots
from leslie_hopf.dynamics import return_displacement
from leslie_hopf.errors import NonzeroTrace, NotCenterFocusType, RegimeError
from leslie_hopf.lyapunov import (ShiftedSystem, alpha_beta_traces, appendix_check,
                                  focal_constants, reference_constants, shift_to_origin,
                                  zero_trace_s)
from leslie_hopf.lyapunov import reference_data as data
from leslie_hopf.lyapunov.series import OmegaNumber
from leslie_hopf.model import AlphaBetaParams, ModelParams, find_positive_equilibria

F = Fraction


def sign(v):
    return (v > 0) - (v < 0)


def in_weak_focus_regime(K, b):
    return K * b - K + 2 > 0 and 2 * K - b - 3 > 0 and 4 * K * b > (K - 1) ** 2


@st.composite
def weak_focus_points(draw):
    K = draw(st.fractions(min_value=F(11, 10), max_value=8, max_denominator=30))
    b = draw(st.fractions(min_value=F(1, 30), max_value=12, max_denominator=30))
    assume(in_weak_focus_regime(K, b))
    return K, b


# ---------------------------------------------------------------- shifted system

@pytest.mark.parametrize("K,b", [(4, 2), (F(7, 2), 3), (10, F(33675165, 10 ** 7)), (F(5, 2), 1)])
def test_shifted_coefficients_match_table(K, b):
    K, b = F(K), F(b)
    sh = shift_to_origin(ModelParams.at_weak_focus(K, b))
    a10 = 2 * K - b - 3
    assert sh.a(1, 0) == a10
    assert sh.a(0, 1) == -(K - 1) * (b + 1)
    assert sh.b(1, 0) == a10 and sh.b(0, 1) == -a10
    assert sh.a(2, 0) == 5 * K - 2 * b - 9
    assert sh.a(4, 0) == K - 5
    assert sh.b(2, 0) == 2 * a10 / (b + 1)
    assert sh.evaluate(0, 0) == (0, 0)


def test_shift_rejects_non_equilibrium():
    with pytest.raises(ValueError):
        shift_to_origin(ModelParams(4, 2, 1), eq=(2, 2))


@pytest.mark.parametrize("alpha,beta", [(8, 12), (2, 5), (F(3, 2), F(7, 3))])
def test_third_equilibrium_trace(alpha, beta):
    ab = AlphaBetaParams(alpha, beta, F(3, 10))
    sh = shift_to_origin(ab, eq=(beta, beta))
    assert sh.trace == alpha_beta_traces(ab.alpha, ab.beta, ab.s)[1]
    sh1 = shift_to_origin(ab)
    assert sh1.trace == alpha_beta_traces(ab.alpha, ab.beta, ab.s)[0]


def test_shift_accepts_equilibrium_objects():
    p = ModelParams(4, F(54, 100), 1)
    third = find_positive_equilibria(p)[2]
    assert shift_to_origin(p, eq=third).center == (F(9, 5), F(9, 5))


# ---------------------------------------------------------------- focal constants

def test_linear_center_has_no_obstructions():
    lin = ShiftedSystem({(0, 1): F(-1)}, {(1, 0): F(1)}, (0, 0))
    c = focal_constants(lin, order=2)
    assert c.V1 == 0 and c.V3 == 0 and c.V5 == 0


def test_errors():
    with pytest.raises(NonzeroTrace):
        focal_constants(ShiftedSystem({(1, 0): F(1), (0, 1): F(-1)}, {(1, 0): F(1)}, (0, 0)))
    with pytest.raises(NotCenterFocusType):
        focal_constants(ShiftedSystem({(0, 1): F(1)}, {(1, 0): F(1)}, (0, 0)))
    with pytest.raises(NonzeroTrace):
        focal_constants(shift_to_origin(ModelParams(4, 2, 1)))


def test_constants_are_base_field_elements():
    c = focal_constants(shift_to_origin(ModelParams.at_weak_focus(4, 2)), order=2)
    assert isinstance(c.V3, Fraction) and isinstance(c.V5, Fraction)
    assert not isinstance(c.V3, OmegaNumber)


@settings(max_examples=30)
@given(weak_focus_points())
def test_v3_equals_closed_form_in_coupling_units(point):
    K, b = point
    p = ModelParams.at_weak_focus(K, b)
    ours = focal_constants(shift_to_origin(p), order=1).in_coupling_units()
    ref = reference_constants(p)
    assert ours.V3 == ref.V3
    assert ours.V1 == 0


@settings(max_examples=30)
@given(weak_focus_points(), st.fractions(min_value=F(1, 10), max_value=20, max_denominator=10))
def test_positive_scaling_scales_v3(point, c):
    K, b = point
    sh = shift_to_origin(ModelParams.at_weak_focus(K, b))
    scaled = ShiftedSystem({k: c * v for k, v in sh.f.items()},
                           {k: c * v for k, v in sh.g.items()}, sh.center)
    v3 = focal_constants(sh, order=1).V3
    v3c = focal_constants(scaled, order=1).V3
    assert v3c == c * v3
    assert sign(v3c) == sign(v3)


def test_v5_negative_at_order_two_point():
    # midpoint of the reference (K1, b1) boxes: V3 vanishes to box accuracy, V5 < 0
    K = (F(16661832741, 4294967296) + F(66647330965, 17179869184)) / 2
    b = (F(14810494337133, 4398046511104) + F(59241977348533, 17592186044416)) / 2
    p = ModelParams.at_weak_focus(K, b)
    c = focal_constants(shift_to_origin(p), order=2)
    assert abs(float(c.V3)) < 1e-10 * abs(float(c.V5))
    assert c.V5 < 0 and reference_constants(p).V5 < 0


def test_first_order_weak_focus_at_k10():
    # b = b1 at K = 10 is not on the upsilon1 curve: the focus is first order, V3 > 0
    p = ModelParams.at_weak_focus(10, "3.3675165")
    assert focal_constants(shift_to_origin(p), order=1).V3 > 0
    assert reference_constants(p).V3 > 0


def test_v5_matches_closed_form_where_v3_vanishes():
    # bracket the interior zero of upsilon1(4, b) tightly and compare V5 at both ends
    K = F(4)
    u1 = data.upsilon1().subs({"K": K})
    roots = [r for r in isolate_roots(u1, (F(1, 100), 2 * K - 3), F(1, 2 ** 60))
             if in_weak_focus_regime(K, r["b"][0]) and in_weak_focus_regime(K, r["b"][1])]
    assert len(roots) == 1
    for r in roots:
        for b in r["b"]:
            c = focal_constants(shift_to_origin(ModelParams.at_weak_focus(K, b)), order=2)
            ref = reference_constants(ModelParams.at_weak_focus(K, b))
            assert sign(c.V5) == sign(ref.V5)


# ---------------------------------------------------------------- reference constants

def test_reference_unique_identity():
    K, b = F(7, 2), F(3)
    ref = reference_constants(ModelParams.at_weak_focus(K, b))
    u1 = data.upsilon1().evaluate({"K": K, "b": b})
    assert ref.V3 == (K - 1) ** 2 * u1 / (4 * (K * b - K + 2))


def test_reference_regime_errors():
    with pytest.raises(RegimeError):
        reference_constants(ModelParams(4, 2, 1))
    with pytest.raises(RegimeError):
        reference_constants(ModelParams(10, F(1, 2), 1))
    with pytest.raises(RegimeError):
        reference_constants(ModelParams(4, 2, 1), "first_eq")
    with pytest.raises(ValueError):
        reference_constants(ModelParams(4, 2, 1), "second_eq")


def _outer_points(n, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        alpha = 1 + F(rng.randint(1, 400), 40)
        beta = alpha + F(rng.randint(1, 400), 40)
        out.append((alpha, beta))
    return out


def test_g1_positive_on_family():
    G1 = data.g1()
    for alpha, beta in _outer_points(50, 3):
        assert G1.evaluate({"alpha": alpha, "beta": beta}) > 0


@pytest.mark.parametrize("which,index", [("first_eq", 0), ("third_eq", 1)])
def test_outer_constants_agree_with_closed_form(which, index):
    for alpha, beta in _outer_points(20, 11):
        s = zero_trace_s(alpha, beta, which)
        if s <= 0:
            continue
        ab = AlphaBetaParams(alpha, beta, s)
        assert alpha_beta_traces(alpha, beta, s)[index] == 0
        center = None if which == "first_eq" else (beta, beta)
        ours = focal_constants(shift_to_origin(ab, eq=center), order=1).in_coupling_units()
        ref = reference_constants(ab, which)
        assert sign(ours.V3) == sign(ref.V3)
        assert (ours.V3 == 0) == (ref.V3 == 0)


# ---------------------------------------------------------------- symbolic check

@pytest.mark.slow
def test_appendix_check_agrees():
    check = appendix_check(order=2)
    assert check.v3_agrees and check.v5_agrees
    assert "matches" in check.report()


# ---------------------------------------------------------------- return-map oracle

def _return_map_points(n=10, seed=7):
    rng = random.Random(seed)
    pts = []
    while len(pts) < n:
        K, b = F(rng.randint(12, 60), 10), F(rng.randint(1, 200), 50)
        if in_weak_focus_regime(K, b):
            pts.append((K, b))
    return pts


@pytest.mark.parametrize("K,b", _return_map_points())
def test_return_map_sign_matches_v3(K, b):
    """Full-turn displacement on the section ray has the sign of V3, and
    d(r)/r^3 settles as r shrinks."""
    p = ModelParams.at_weak_focus(K, b)
    v3 = reference_constants(p).V3
    assert v3 != 0
    ratios = []
    for r in (1e-2, 3e-3, 1e-3):
        d = return_displacement(p, r, rtol=1e-12)
        assert d is not None and sign(d) == sign(v3)
        ratios.append(d / r ** 3)
    assert abs(ratios[2] / ratios[1] - 1) < 0.02
