import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leslie_hopf.dynamics import (CycleStability, compiled_available, default_seeds,
                                  detect_limit_cycles, get_scenario, integrate_orbit,
                                  return_displacement, return_map, sections)
from leslie_hopf.errors import DomainError, StiffnessError
from leslie_hopf.model import Form, ModelParams, vector_field

F = Fraction
FIG41A = ModelParams(10, "3.3675165", "0.3")


@pytest.fixture(scope="module")
def scenario_cycles():
    return {name: detect_limit_cycles(get_scenario(name).params)
            for name in ("fig4_1a", "fig4_1b", "fig4_2", "fig4_4", "fig4_5")}


# ---------------------------------------------------------------- integration

def test_equilibrium_start_is_constant():
    tr = integrate_orbit(FIG41A, (1, 1), 50.0)
    assert np.all(tr.x == 1.0) and np.all(tr.y == 1.0)
    assert tr.complete and tr.t[-1] == 50.0


def test_trajectory_bookkeeping():
    tr = integrate_orbit(FIG41A, (1.5, 1.2), 5.0, 1e-9)
    assert np.all(np.diff(tr.t) > 0)
    assert tr.steps == len(tr) - 1 and tr.max_error <= 1.0
    assert tr.samples[0] == (0.0, 1.5, 1.2)
    lines = tr.to_csv().splitlines()
    assert lines[0].startswith("# form=quintic tol=1e-09") and lines[1] == "t,x,y"
    assert len(lines) == len(tr) + 2


def test_backward_integration_retraces():
    fwd = integrate_orbit(FIG41A, (1.5, 1.2), 0.3, 1e-11)
    back = integrate_orbit(FIG41A, fwd.end, 0.3, 1e-11, backward=True)
    assert back.t[-1] == pytest.approx(-0.3)
    assert back.end == pytest.approx((1.5, 1.2), abs=1e-8)


def test_start_must_be_positive():
    with pytest.raises(DomainError):
        integrate_orbit(FIG41A, (0.0, 1.0), 1.0)
    with pytest.raises(DomainError):
        integrate_orbit(FIG41A, (1.0, 1.0), 1.0, tol=0)


def test_step_floor_raises_with_partial_orbit():
    with pytest.raises(StiffnessError) as info:
        integrate_orbit(FIG41A, (5, 5), 1.0, 1e-12, h_min=0.05)
    partial = info.value.trajectory
    assert partial is not None and not partial.complete and len(partial) > 1
    assert np.all(partial.x > 0) and np.all(partial.y >= 0)


@settings(max_examples=100)
@given(st.floats(0.01, 20.0), st.floats(0.01, 20.0))
def test_orbits_enter_and_stay_in_omega(x0, y0):
    tr = integrate_orbit(FIG41A, (x0, y0), 50.0, 1e-8)
    assert np.all(tr.x > 0) and np.all(tr.y >= 0)
    inside = (tr.x < 10) & (tr.y < 10)
    assert inside.any()
    first = int(np.argmax(inside))
    assert inside[first:].all()


@settings(max_examples=40)
@given(st.floats(0.05, 9.0), st.floats(0.05, 9.0),
       st.sampled_from([(4, "0.54", "0.724026"), (2, "0.12", "0.4"), (3, 3, 2)]))
def test_positivity_preserved(x0, y0, kbs):
    tr = integrate_orbit(ModelParams(*kbs), (x0, y0), 30.0, 1e-8)
    assert np.all(tr.x > 0) and np.all(tr.y >= 0)


def test_separatrix_direction_near_origin():
    p = ModelParams(3, 3, 2)
    theta = math.atan(0.5)
    r0 = 1e-3
    tr = integrate_orbit(p, (r0 * math.cos(theta), r0 * math.sin(theta)), 1e9, 1e-10,
                         max_steps=2000)
    radius = np.hypot(tr.x, tr.y)
    arc = radius <= 2 * r0
    angles = np.degrees(np.arctan2(tr.y[arc], tr.x[arc]))
    assert arc.sum() > 5
    assert np.max(np.abs(angles - math.degrees(theta))) < 5.0


def _foot(params, point, q, tol, field):
    """Foot of the perpendicular from ``point`` onto the quintic orbit through ``q``."""
    fx, fy = field
    for _ in range(50):
        pt = {"x": q[0], "y": q[1]}
        v = fx.evaluate_float(pt), fy.evaluate_float(pt)
        tau = ((point[0] - q[0]) * v[0] + (point[1] - q[1]) * v[1]) / (v[0] ** 2 + v[1] ** 2)
        if abs(tau) * math.hypot(*v) < 1e-3 * tol:
            break
        q = integrate_orbit(params, q, abs(tau), tol, backward=tau < 0).end
    return q


@pytest.mark.parametrize("start", [(1.5, 1.2), (3.0, 0.5), (0.6, 2.0)])
def test_rational_and_quintic_orbits_coincide(start):
    """Walk the rational orbit and track the same point on the quintic orbit:
    quintic time advances by dt / (K x (x^2 + b)), then a local projection."""
    tol = 1e-9
    K, b = float(FIG41A.K), float(FIG41A.b)
    field = vector_field(FIG41A, Form.QUINTIC)
    rat = integrate_orbit(FIG41A, start, 20.0, tol, form=Form.RATIONAL)
    q, worst = start, 0.0
    for i in range(1, len(rat)):
        x0, x1 = rat.x[i - 1], rat.x[i]
        rate = 0.5 * (1 / (K * x0 * (x0 ** 2 + b)) + 1 / (K * x1 * (x1 ** 2 + b)))
        q = integrate_orbit(FIG41A, q, rate * (rat.t[i] - rat.t[i - 1]), tol).end
        q = _foot(FIG41A, (rat.x[i], rat.y[i]), q, tol, field)
        worst = max(worst, math.hypot(rat.x[i] - q[0], rat.y[i] - q[1]))
    assert worst < 10 * tol


# ---------------------------------------------------------------- backends

@pytest.mark.skipif(not compiled_available(), reason="compiled kernels not built")
def test_backends_agree():
    a = integrate_orbit(FIG41A, (1.5, 1.2), 10.0, backend="cython")
    b = integrate_orbit(FIG41A, (1.5, 1.2), 10.0, backend="python")
    assert a.backend == "cython" and b.backend == "python"
    assert len(a) == len(b)
    np.testing.assert_allclose(a.x, b.x, rtol=1e-12, atol=1e-14)
    np.testing.assert_allclose(a.y, b.y, rtol=1e-12, atol=1e-14)
    for u in (0.01, 0.3, 1.0):
        ra, rb = (return_map(FIG41A, u, backend=k) for k in ("cython", "python"))
        assert ra[0] == pytest.approx(rb[0], rel=1e-12)


def test_backend_env_var(monkeypatch):
    monkeypatch.setenv("LESLIE_HOPF_BACKEND", "python")
    assert integrate_orbit(FIG41A, (1.5, 1.2), 0.1).backend == "python"


# ---------------------------------------------------------------- return maps and cycles

def test_sections_are_anti_saddle_rays():
    secs = sections(ModelParams(4, "0.54", "0.724026"))
    assert [s.role for s in secs] == ["first", "third"]
    assert secs[0].xc == 1.0 and secs[0].length == pytest.approx(3.0)


def test_default_seed_layout():
    seeds = default_seeds(FIG41A)
    assert len(seeds) == 24 + 8
    assert all(x > 0 and y > 0 for x, y in seeds)


def test_return_displacement_sign_around_unstable_focus():
    # fig4_1a: orbits spiral out near the focus and in far away
    assert return_displacement(FIG41A, 0.05) > 0
    assert return_displacement(FIG41A, 5.0) < 0


def test_detect_rejects_bad_input():
    with pytest.raises(DomainError):
        detect_limit_cycles(FIG41A, seeds=[(-1.0, 1.0)])
    with pytest.raises(DomainError):
        detect_limit_cycles(FIG41A, tol=0)


def test_no_section_through_a_saddle():
    p = ModelParams(10, F(1, 2), 1)  # (1, 1) is the middle root and a saddle
    assert [s.role for s in sections(p)] == ["first", "third"]
    assert all(s.xc != 1.0 for s in sections(p))


def test_fig41a_single_attracting(scenario_cycles):
    cycles = scenario_cycles["fig4_1a"]
    assert [c.stability for c in cycles] == [CycleStability.ATTRACTING]
    assert (1.0, 1.0) in cycles[0].enclosed_equilibria


def test_fig41b_nested_pair(scenario_cycles):
    cycles = sorted(scenario_cycles["fig4_1b"], key=lambda c: c.radius)
    assert [c.stability for c in cycles] == [CycleStability.REPELLING, CycleStability.ATTRACTING]
    assert all((1.0, 1.0) in c.enclosed_equilibria for c in cycles)


def test_fig44_small_repelling_inside_large_attracting(scenario_cycles):
    cycles = sorted(scenario_cycles["fig4_4"], key=lambda c: c.radius)
    assert [c.stability for c in cycles] == [CycleStability.REPELLING, CycleStability.ATTRACTING]
    assert len(cycles[1].enclosed_equilibria) == 3
    assert len(cycles[0].enclosed_equilibria) == 1


def test_stability_matches_multiplier(scenario_cycles):
    for name, cycles in scenario_cycles.items():
        for c in cycles:
            if c.stability is CycleStability.ATTRACTING:
                assert abs(c.multiplier) < 1, name
            else:
                assert abs(c.multiplier) > 1, name
            assert abs(c.residual) < 1e-4


def test_cycles_are_return_map_fixed_points(scenario_cycles):
    for name in ("fig4_1a", "fig4_1b", "fig4_4"):
        params = get_scenario(name).params
        secs = {(s.xc, s.yc): s for s in sections(params)}
        for c in scenario_cycles[name]:
            d = return_displacement(params, c.radius, secs[tuple(c.section[:2])])
            assert abs(d) < 1e-5


def test_doubled_tolerance_keeps_count(scenario_cycles):
    loose = detect_limit_cycles(get_scenario("fig4_1a").params, tol=2e-6)
    assert len(loose) == len(scenario_cycles["fig4_1a"]) == 1


@pytest.mark.parametrize("delta", [F(4, 1000), F(1, 1000), F(1, 4000)])
def test_hopf_cycle_small_near_weak_focus(delta):
    K, b = F(7, 2), F(3)  # V3 < 0 here
    s_star = (2 * K - b - 3) / (K * (b + 1))
    cycles = detect_limit_cycles(ModelParams(K, b, s_star - delta))
    assert [c.stability for c in cycles] == [CycleStability.ATTRACTING]


def test_hopf_amplitude_shrinks_with_trace():
    K, b = F(7, 2), F(3)
    s_star = (2 * K - b - 3) / (K * (b + 1))
    radii = [detect_limit_cycles(ModelParams(K, b, s_star - d))[0].radius
             for d in (F(4, 1000), F(1, 1000), F(1, 4000))]
    assert radii[0] > radii[1] > radii[2]
    # square-root law: quartering the trace halves the amplitude
    for big, small in zip(radii, radii[1:]):
        assert big / small == pytest.approx(2.0, rel=0.1)
