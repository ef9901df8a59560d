"""Named phase-portrait scenarios: detect cycles, check them against the
expected configuration and render an SVG."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

import numpy as np

from ..errors import DomainError, StiffnessError
from ..model import AlphaBetaParams, EquilibriumClass, ModelParams, find_positive_equilibria
from .cycles import (DEFAULT_HORIZON, DEFAULT_RADIAL_TOL, CycleStability, default_seeds,
                     detect_limit_cycles)
from .integrate import DEFAULT_TOL, flow_spec, integrate_orbit

__all__ = ["REPORT_SCHEMA", "ExpectedCycle", "Scenario", "SCENARIOS", "PortraitResult",
           "get_scenario", "reproduce_portrait", "render_svg"]

REPORT_SCHEMA = "leslie-hopf/portrait-report/1"

A, R = CycleStability.ATTRACTING, CycleStability.REPELLING


@dataclass(frozen=True)
class ExpectedCycle:
    """``stability`` of ``None`` leaves the label unchecked."""

    stability: CycleStability | None
    encloses: tuple

    def to_json_obj(self) -> dict:
        return {"stability": None if self.stability is None else self.stability.value,
                "encloses": list(self.encloses)}


@dataclass(frozen=True)
class Scenario:
    """Parameters plus the configuration a run must reproduce.

    ``cycles`` is ordered from the narrowest loop to the widest; each
    ``encloses`` lists the abscissae of the equilibria inside. ``zoom`` is an
    optional ``(x0, x1, y0, y1)`` window drawn as a second panel.
    """

    name: str
    params: object
    description: str
    equilibria: tuple
    cycles: tuple
    zoom: tuple | None = None
    notes: str = ""

    def with_params(self, params) -> "Scenario":
        return replace(self, params=params)


SCENARIOS = {
    "fig4_1a": Scenario(
        "fig4_1a", ModelParams(10, "3.3675165", "0.3"),
        "unstable focus at (1,1) inside one globally attracting cycle",
        (1,), (ExpectedCycle(A, (1,)),)),
    "fig4_1b": Scenario(
        "fig4_1b", ModelParams(10, "3.3675165", "0.4"),
        "stable focus at (1,1) inside a repelling cycle inside an attracting one",
        (1,), (ExpectedCycle(R, (1,)), ExpectedCycle(A, (1,)))),
    "fig4_2": Scenario(
        "fig4_2", ModelParams(4, "0.54", "0.724026"),
        "two nested small cycles around (1,1) with further equilibria at x = 1.2 and 1.8",
        (1, "6/5", "9/5"), (ExpectedCycle(None, (1,)), ExpectedCycle(None, (1,))),
        zoom=(0.985, 1.015, 0.985, 1.015),
        notes="s sits 2.6e-8 above the trace zero 223/308 of (1,1)"),
    "fig4_4": Scenario(
        "fig4_4", ModelParams(2, "0.12", "0.4"),
        "repelling cycle around (1,1) and an attracting cycle around all three equilibria",
        ("2/5", "3/5", 1), (ExpectedCycle(R, (1,)), ExpectedCycle(A, ("2/5", "3/5", 1)))),
    "fig4_5": Scenario(
        "fig4_5", AlphaBetaParams(8, 12, "0.3"),
        "repelling cycles around (1,1) and (12,12) inside one attracting cycle",
        (1, 8, 12), (ExpectedCycle(R, (1,)), ExpectedCycle(R, (12,)),
                     ExpectedCycle(A, (1, 8, 12))),
        zoom=(0.6, 1.4, 0.6, 1.4)),
}


def get_scenario(name: str) -> Scenario:
    try:
        return SCENARIOS[name]
    except KeyError:
        raise DomainError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}") from None


def _num(v) -> float:
    return float(Fraction(v)) if isinstance(v, str) else float(v)


def _match(scenario: Scenario, cycles, equilibria) -> list:
    problems = []
    xs = sorted(float(e.x) for e in equilibria)
    want = sorted(_num(v) for v in scenario.equilibria)
    if len(xs) != len(want) or any(abs(a - b) > 1e-9 for a, b in zip(xs, want)):
        problems.append(f"equilibria at x = {xs}, expected {want}")
    if len(cycles) != len(scenario.cycles):
        problems.append(f"{len(cycles)} cycles detected, expected {len(scenario.cycles)}")
        return problems
    ordered = sorted(cycles, key=_width)
    for i, (got, exp) in enumerate(zip(ordered, scenario.cycles)):
        if exp.stability is not None and got.stability is not exp.stability:
            problems.append(f"cycle {i}: {got.stability.value}, expected {exp.stability.value}")
        inside = sorted(p[0] for p in got.enclosed_equilibria)
        target = sorted(_num(v) for v in exp.encloses)
        if len(inside) != len(target) or any(abs(a - b) > 1e-9 for a, b in zip(inside, target)):
            problems.append(f"cycle {i} encloses x = {inside}, expected {target}")
    return problems


def _width(cycle) -> float:
    (x0, x1), _ = cycle.amplitude_box
    return x1 - x0


@dataclass
class PortraitResult:
    scenario: Scenario
    report: dict
    svg: str
    csv: str | None = None
    files: list = field(default_factory=list)

    @property
    def matches(self) -> bool:
        return self.report["status"] == "Match"

    def report_json(self) -> str:
        return json.dumps(self.report, indent=2, sort_keys=True) + "\n"


def _thin(xs, ys, limit=1500):
    step = max(1, len(xs) // limit)
    return list(zip(xs[::step].tolist() + [xs[-1]], ys[::step].tolist() + [ys[-1]]))


def _guide_orbits(params, rtol, n_steps=4000):
    """A few orbits from the far-field seeds, for context in the picture."""
    out = []
    for p in default_seeds(params)[-8:]:
        try:
            tr = integrate_orbit(params, p, 1e6, rtol * 100, max_steps=n_steps)
        except StiffnessError as exc:
            tr = exc.trajectory
        out.append(_thin(tr.x, tr.y, 600))
    return out


def reproduce_portrait(scenario, *, tol: float = DEFAULT_RADIAL_TOL, rtol: float = DEFAULT_TOL,
                       horizon: float = DEFAULT_HORIZON, backend: str | None = None,
                       out_dir=None, csv: bool = False) -> PortraitResult:
    """Run ``scenario`` (a name or :class:`Scenario`) and compare with its
    expected cycle configuration.

    The report's ``status`` is ``"Match"`` or ``"Mismatch"``. When ``out_dir``
    is given, ``<name>.json`` and ``<name>.svg`` (and ``<name>.csv`` with
    ``csv=True``) are written there.
    """
    sc = get_scenario(scenario) if isinstance(scenario, str) else scenario
    params = sc.params
    equilibria = find_positive_equilibria(params)
    cycles = detect_limit_cycles(params, tol=tol, rtol=rtol, horizon=horizon, backend=backend)
    problems = _match(sc, cycles, equilibria)
    spec = flow_spec(params)
    report = {
        "schema": REPORT_SCHEMA,
        "scenario": sc.name,
        "description": sc.description,
        "notes": sc.notes,
        "params": params.to_json_obj(),
        "form": spec.form.value,
        "tolerances": {"integrator_rtol": rtol, "cycle_radial_tol": tol, "horizon": horizon},
        "equilibria": [e.to_json_obj() for e in equilibria],
        "classifications": [e.classification.value for e in equilibria],
        "cycles": [c.to_json_obj() for c in sorted(cycles, key=_width)],
        "counts": {"total": len(cycles), "attracting": cycles.count(A),
                   "repelling": cycles.count(R)},
        "expected": {"equilibria": [str(v) for v in sc.equilibria],
                     "cycles": [c.to_json_obj() for c in sc.cycles]},
        "no_return": len(cycles.no_return),
        "discontinuities": [list(p) for p in cycles.discontinuities],
        "status": "Match" if not problems else "Mismatch",
        "mismatches": problems,
    }
    loops = [(c, integrate_orbit(params, c.anchor, c.period, rtol)) for c in sorted(cycles, key=_width)]
    svg = render_svg(sc, equilibria, loops, _guide_orbits(params, rtol), spec.K)
    csv_text = None
    if csv:
        rows = ["cycle,stability,t,x,y"]
        for i, (c, tr) in enumerate(loops):
            for t, x, y in zip(tr.t.tolist(), tr.x.tolist(), tr.y.tolist()):
                rows.append(f"{i},{c.stability.value},{t!r},{x!r},{y!r}")
        csv_text = "\n".join(rows) + "\n"
    result = PortraitResult(sc, report, svg, csv_text)
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        targets = [(out / f"{sc.name}.json", result.report_json()), (out / f"{sc.name}.svg", svg)]
        if csv_text is not None:
            targets.append((out / f"{sc.name}.csv", csv_text))
        for path, text in targets:
            path.write_text(text)
            result.files.append(str(path))
    return result


# SVG ---------------------------------------------------------------------

_PANEL = 420
_PAD = 44

_GLYPH = {
    EquilibriumClass.HYPERBOLIC_SADDLE: "saddle",
    EquilibriumClass.STABLE_FOCUS: "stable",
    EquilibriumClass.STABLE_NODE: "stable",
    EquilibriumClass.UNSTABLE_FOCUS: "unstable",
    EquilibriumClass.UNSTABLE_NODE: "unstable",
    EquilibriumClass.WEAK_FOCUS_OR_CENTER: "weak",
    EquilibriumClass.DEGENERATE: "weak",
}


class _Frame:
    def __init__(self, window, left):
        self.x0, self.x1, self.y0, self.y1 = window
        self.left = left

    def __call__(self, x, y):
        px = self.left + _PAD + (x - self.x0) / (self.x1 - self.x0) * (_PANEL - 2 * _PAD)
        py = _PANEL - _PAD - (y - self.y0) / (self.y1 - self.y0) * (_PANEL - 2 * _PAD)
        return px, py

    def inside(self, x, y):
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1


def _path(frame, pts, **attrs):
    segs, cur = [], []
    for x, y in pts:
        if frame.inside(x, y):
            cur.append(frame(x, y))
        elif cur:
            segs.append(cur)
            cur = []
    if cur:
        segs.append(cur)
    extra = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
    out = []
    for seg in segs:
        if len(seg) < 2:
            continue
        d = "M" + " L".join(f"{px:.2f},{py:.2f}" for px, py in seg)
        out.append(f'<path d="{d}" fill="none" {extra}/>')
    return out


def _glyph(kind, px, py):
    if kind == "saddle":
        return (f'<path d="M{px - 5:.2f},{py - 5:.2f} L{px + 5:.2f},{py + 5:.2f} '
                f'M{px - 5:.2f},{py + 5:.2f} L{px + 5:.2f},{py - 5:.2f}" '
                'stroke="#b00" stroke-width="2"/>')
    if kind == "stable":
        return f'<circle cx="{px:.2f}" cy="{py:.2f}" r="4.5" fill="#000"/>'
    if kind == "unstable":
        return (f'<circle cx="{px:.2f}" cy="{py:.2f}" r="4.5" fill="#fff" stroke="#000" '
                'stroke-width="1.5"/>')
    return (f'<path d="M{px:.2f},{py - 6:.2f} L{px + 6:.2f},{py:.2f} L{px:.2f},{py + 6:.2f} '
            f'L{px - 6:.2f},{py:.2f} Z" fill="#888"/>')


def _window(K, loops, equilibria):
    xs = [float(e.x) for e in equilibria] + [K]
    ys = [float(e.y) for e in equilibria]
    for c, _ in loops:
        (a, b), (lo, hi) = c.amplitude_box
        xs += [a, b]
        ys += [lo, hi]
    top = max(ys + [1.0]) * 1.1
    return (0.0, max(xs) * 1.05, 0.0, top)


def _panel(frame, sc, equilibria, loops, guides, K, title):
    out = [f'<rect x="{frame.left + _PAD}" y="{_PAD}" width="{_PANEL - 2 * _PAD}" '
           f'height="{_PANEL - 2 * _PAD}" fill="none" stroke="#444"/>',
           f'<text x="{frame.left + _PANEL / 2:.1f}" y="{_PAD - 14}" text-anchor="middle" '
           f'font-size="13">{title}</text>']
    for x, anchor in ((frame.x0, "start"), (frame.x1, "end")):
        px, _ = frame(x, frame.y0)
        out.append(f'<text x="{px:.1f}" y="{_PANEL - _PAD + 16}" text-anchor="{anchor}" '
                   f'font-size="11">{x:.4g}</text>')
    for y in (frame.y0, frame.y1):
        _, py = frame(frame.x0, y)
        out.append(f'<text x="{frame.left + _PAD - 4}" y="{py + 4:.1f}" text-anchor="end" '
                   f'font-size="11">{y:.4g}</text>')
    for pts in guides:
        out += _path(frame, pts, stroke="#9ab", stroke_width="0.6")
    params = sc.params.to_model() if isinstance(sc.params, AlphaBetaParams) else sc.params
    k, b = float(params.K), float(params.b)
    grid = np.linspace(max(frame.x0, 1e-9), min(frame.x1, k), 400)
    prey = [(x, (k - x) * (x * x + b) / ((k - 1) * (b + 1))) for x in grid]
    out += _path(frame, prey, stroke="#2a7", stroke_width="1", stroke_dasharray="4 3")
    diag = [(x, x) for x in np.linspace(frame.x0, frame.x1, 50)]
    out += _path(frame, diag, stroke="#c80", stroke_width="1", stroke_dasharray="4 3")
    for c, tr in loops:
        style = ({"stroke": "#1048c0", "stroke_width": "2"} if c.stability is A
                 else {"stroke": "#c01048", "stroke_width": "1.6", "stroke_dasharray": "6 3"})
        out += _path(frame, _thin(tr.x, tr.y), **style)
    for e in equilibria:
        x, y = e.point
        if frame.inside(x, y):
            out.append(_glyph(_GLYPH[e.classification], *frame(x, y)))
    return out


def render_svg(sc: Scenario, equilibria, loops, guides, K) -> str:
    """Phase portrait: nullclines (dashed), guide orbits (thin), attracting
    cycles (solid blue), repelling cycles (dashed red), equilibria (filled
    dot stable, hollow dot unstable, cross saddle, diamond otherwise)."""
    windows = [("phase portrait", _window(K, loops, equilibria))]
    if sc.zoom is not None:
        windows.append(("magnified", sc.zoom))
    width = _PANEL * len(windows)
    body = []
    for i, (title, win) in enumerate(windows):
        body += _panel(_Frame(win, i * _PANEL), sc, equilibria, loops, guides, K,
                       f"{sc.name} ({title})")
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{_PANEL}" '
            f'viewBox="0 0 {width} {_PANEL}" font-family="sans-serif">')
    return "\n".join([head, f'<rect width="{width}" height="{_PANEL}" fill="#fff"/>', *body,
                      "</svg>"]) + "\n"
