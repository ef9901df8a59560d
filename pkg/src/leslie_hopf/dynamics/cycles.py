"""Limit-cycle detection through first-return maps.

Each anti-saddle focus carries a section: the horizontal ray leaving it in
the ``+x`` direction, which the flow crosses upward. A point at offset ``u``
on the ray returns at offset ``P(u)``; periodic orbits are the zeros of the
displacement ``d(u) = P(u) - u``. Seeds are mapped onto rays, the sign of
``d`` is read along each ray, and every sign change is narrowed by bisection.
A bracket whose ends keep a large displacement straddles a jump of ``P``
(an orbit running into a saddle) rather than a cycle and is discarded.

Counts are what the scan detects; nothing here proves that no cycle was
missed.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError
from ..model import find_positive_equilibria
from . import _backend
from .integrate import DEFAULT_TOL, flow_spec, integrate_orbit

__all__ = ["CycleStability", "LimitCycle", "NoReturn", "CycleList", "Section",
           "sections", "return_map", "return_displacement", "default_seeds",
           "detect_limit_cycles"]

DEFAULT_RADIAL_TOL = 1e-6
DEFAULT_HORIZON = 1e5
LADDER_SIZE = 24
FAR_FIELD_SIZE = 8
RETURN_MAX_STEPS = 1_000_000


class CycleStability(enum.Enum):
    ATTRACTING = "Attracting"
    REPELLING = "Repelling"


@dataclass(frozen=True)
class Section:
    """Ray ``{(xc + u, yc) : u > 0}`` out of an anti-saddle."""

    xc: float
    yc: float
    length: float
    role: str


@dataclass(frozen=True)
class NoReturn:
    """A seed (or bisection probe) whose orbit did not come back to its ray."""

    seed: tuple
    section: tuple
    reason: str

    def to_json_obj(self) -> dict:
        return {"seed": list(self.seed), "section": list(self.section), "reason": self.reason}


@dataclass(frozen=True)
class LimitCycle:
    """A detected periodic orbit.

    ``anchor`` is where the orbit meets the section ray, ``multiplier`` the
    return-map slope there and ``residual`` the displacement left at the
    anchor. ``period`` is measured in the time of the integrated form.
    """

    anchor: tuple
    period: float
    stability: CycleStability
    amplitude_box: tuple
    enclosed_equilibria: tuple
    multiplier: float
    section: tuple
    radius: float
    residual: float

    def to_json_obj(self) -> dict:
        (x0, x1), (y0, y1) = self.amplitude_box
        return {"anchor": list(self.anchor), "period": self.period,
                "stability": self.stability.value,
                "amplitude_box": {"x": [x0, x1], "y": [y0, y1]},
                "enclosed_equilibria": [list(p) for p in self.enclosed_equilibria],
                "multiplier": self.multiplier, "section": list(self.section),
                "radius": self.radius, "residual": self.residual}


class CycleList(list):
    """Cycles sorted by anchor, plus what went wrong along the way."""

    def __init__(self, cycles=(), no_return=(), discontinuities=()):
        super().__init__(cycles)
        self.no_return = list(no_return)
        self.discontinuities = list(discontinuities)

    def count(self, stability: CycleStability | None = None) -> int:  # type: ignore[override]
        if stability is None:
            return len(self)
        return sum(1 for c in self if c.stability is stability)


def sections(params) -> list:
    """One section per positive anti-saddle, ordered by abscissa."""
    spec = flow_spec(params)
    out = []
    for eq in find_positive_equilibria(params):
        if eq.classification.is_anti_saddle:
            xc = float(eq.x)
            out.append(Section(xc, float(eq.y), spec.K - xc, eq.role))
    return out


@dataclass
class _Return:
    u: float
    time: float
    ok: bool
    box: tuple
    status: int


class _Mapper:
    """Cached first-return map of one section."""

    def __init__(self, params, section: Section, rtol: float, horizon: float, backend):
        self.spec = flow_spec(params)
        self.section = section
        self.rtol = rtol
        self.horizon = horizon
        self.kern = _backend.kernels(backend)
        self.cache = {}

    def __call__(self, u: float, backward: bool = False) -> _Return:
        key = (u, backward)
        if key in self.cache:
            return self.cache[key]
        sec = self.section
        direction = -self.spec.scale if backward else self.spec.scale
        # the error norm is relative to the distance from the focus, so the
        # absolute floor has to shrink with u to keep tiny cycles resolved
        atol = self.rtol * 1e-2 * min(u, 1.0)
        r = self.kern.first_return(*self.spec.args(), sec.xc, sec.yc, u, 0.0, self.rtol, atol,
                                   self.horizon, RETURN_MAX_STEPS, 1e-14, 1e-12, direction)
        u1, t, status, xlo, xhi, ylo, yhi, _ = r
        box = ((sec.xc + xlo, sec.xc + xhi), (sec.yc + ylo, sec.yc + yhi))
        out = _Return(u1, t, status == 0, box, status)
        self.cache[key] = out
        return out

    def displacement(self, u: float):
        r = self(u)
        return (r.u - u) if r.ok else None


def return_map(params, u: float, section: Section | None = None, *, rtol: float = DEFAULT_TOL,
               horizon: float = DEFAULT_HORIZON, backward: bool = False, backend=None):
    """``(P(u), return time)`` on ``section`` (default: the first anti-saddle),
    or ``None`` when the orbit does not come back within ``horizon``."""
    section = section or sections(params)[0]
    r = _Mapper(params, section, rtol, horizon, backend)(float(u), backward)
    return (r.u, r.time) if r.ok else None


def return_displacement(params, r: float, section: Section | None = None, **kw):
    """``P(r) - r`` on the section ray; positive means the orbit spirals out."""
    out = return_map(params, r, section, **kw)
    return None if out is None else out[0] - r


def default_seeds(params) -> list:
    """A geometric ladder of radii on every section ray plus far-field points.

    Ladder radii run from ``1e-5`` to ``0.99`` of the ray length (up to
    ``x = K``); far-field points sit on a ring well inside ``(0, K)^2``.
    """
    spec = flow_spec(params)
    seeds = []
    for sec in sections(params):
        for u in np.geomspace(1e-5 * sec.length, 0.99 * sec.length, LADDER_SIZE):
            seeds.append((sec.xc + float(u), sec.yc))
    K = spec.K
    for i in range(FAR_FIELD_SIZE):
        angle = 2 * math.pi * (i + 0.5) / FAR_FIELD_SIZE
        seeds.append((K * (0.5 + 0.4 * math.cos(angle)), K * (0.5 + 0.4 * math.sin(angle))))
    return seeds


def _nearest(secs, point):
    return min(secs, key=lambda s: (s.xc - point[0]) ** 2 + (s.yc - point[1]) ** 2)


def _crossing(mapper: _Mapper, point, backward: bool):
    """Offset at which the orbit through ``point`` next meets the ray."""
    sec = mapper.section
    spec = mapper.spec
    direction = -spec.scale if backward else spec.scale
    u0, v0 = point[0] - sec.xc, point[1] - sec.yc
    scale = max(math.hypot(u0, v0), 1e-12)
    r = mapper.kern.first_return(*spec.args(), sec.xc, sec.yc, u0, v0, mapper.rtol,
                                 mapper.rtol * 1e-2 * min(scale, 1.0), mapper.horizon,
                                 RETURN_MAX_STEPS, 1e-14, 1e-12, direction)
    return r[0] if r[2] == 0 else None


def _bisect(mapper: _Mapper, lo: float, hi: float, d_lo: float, tol: float):
    """Shrink ``[lo, hi]`` (``d`` changes sign across it) below ``tol``.

    Returns ``(lo, hi, d_lo, d_hi)`` or a string naming the failure.
    """
    d_hi = mapper.displacement(hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        d_mid = mapper.displacement(mid)
        if d_mid is None:
            return "probe did not return"
        if d_mid == 0.0:
            return mid, mid, 0.0, 0.0
        if (d_mid > 0) == (d_lo > 0):
            lo, d_lo = mid, d_mid
        else:
            hi, d_hi = mid, d_mid
    return lo, hi, d_lo, d_hi


def _point_in_polygon(px, py, xs, ys) -> bool:
    inside = False
    n = len(xs)
    j = n - 1
    for i in range(n):
        if (ys[i] > py) != (ys[j] > py):
            x_cross = xs[i] + (py - ys[i]) * (xs[j] - xs[i]) / (ys[j] - ys[i])
            if px < x_cross:
                inside = not inside
        j = i
    return inside


def _finish(params, mapper: _Mapper, lo, hi, d_lo, d_hi, tol, equilibria):
    u = 0.5 * (lo + hi)
    at = mapper(u)
    if not at.ok:
        return None
    # stability from the sign pattern of d across the root; the slope is a
    # secant taken wide enough to rise above integration noise
    stability = CycleStability.ATTRACTING if d_lo > 0 else CycleStability.REPELLING
    delta = min(0.01 * u + 10 * tol, 0.5 * u)
    left, right = mapper(u - delta), mapper(u + delta)
    if left.ok and right.ok:
        multiplier = (right.u - left.u) / (2 * delta)
    else:
        multiplier = 1.0 + (d_hi - d_lo) / (hi - lo) if hi > lo else float("nan")
    sec = mapper.section
    anchor = (sec.xc + u, sec.yc)
    loop = integrate_orbit(params, anchor, at.time, mapper.rtol, form=mapper.spec.form,
                           backend=_backend.backend_name(mapper.kern))
    inside = tuple(p for p in equilibria if _point_in_polygon(p[0], p[1], loop.x, loop.y))
    box = ((float(loop.x.min()), float(loop.x.max())), (float(loop.y.min()), float(loop.y.max())))
    return LimitCycle(anchor, at.time, stability, box, inside, multiplier,
                      (sec.xc, sec.yc), u, at.u - u)


def _same_cycle(a: LimitCycle, b: LimitCycle, mappers, tol) -> bool:
    """True when ``a``, followed to ``b``'s ray, lands within ``10 tol`` of ``b``."""
    if a.section == b.section:
        return abs(a.radius - b.radius) < 10 * tol
    mapper = mappers[b.section]
    u = _crossing(mapper, a.anchor, backward=False)
    return u is not None and abs(u - b.radius) < 10 * tol


def detect_limit_cycles(params, seeds=None, tol: float = DEFAULT_RADIAL_TOL, *,
                        rtol: float = DEFAULT_TOL, horizon: float = DEFAULT_HORIZON,
                        backend=None) -> CycleList:
    """Periodic orbits found from ``seeds`` (default :func:`default_seeds`).

    Every seed is assigned to the section of its nearest anti-saddle and
    contributes the offsets where its forward and backward orbits meet that
    ray. Along each ray the displacement is evaluated at all contributed
    offsets and each sign change between neighbours is bisected to width
    ``tol``. Cycles closer than ``10 tol`` are merged.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    secs = sections(params)
    seeds = default_seeds(params) if seeds is None else [tuple(map(float, p)) for p in seeds]
    for p in seeds:
        if not (p[0] > 0 and p[1] > 0):
            raise DomainError(f"seed {p} is not in the open first quadrant")
    no_return, jumps, found = [], [], []
    if not secs:
        return CycleList((), no_return, jumps)
    mappers = {(s.xc, s.yc): _Mapper(params, s, rtol, horizon, backend) for s in secs}
    offsets = {key: set() for key in mappers}
    for p in seeds:
        sec = _nearest(secs, p)
        key = (sec.xc, sec.yc)
        if p[1] == sec.yc and p[0] > sec.xc:
            offsets[key].add(p[0] - sec.xc)
            continue
        hits = [_crossing(mappers[key], p, back) for back in (False, True)]
        for u in hits:
            if u is not None and u > 0:
                offsets[key].add(u)
        if all(u is None for u in hits):
            no_return.append(NoReturn(p, key, "orbit never met the section"))

    equilibria = [e.point for e in find_positive_equilibria(params)]
    for key, mapper in mappers.items():
        samples = []
        for u in sorted(offsets[key]):
            d = mapper.displacement(u)
            if d is None:
                no_return.append(NoReturn((key[0] + u, key[1]), key, "no return within horizon"))
            samples.append((u, d))
        for (u0, d0), (u1, d1) in zip(samples, samples[1:]):
            if d0 is None or d1 is None or (d0 > 0) == (d1 > 0) or d0 == 0:
                continue
            out = _bisect(mapper, u0, u1, d0, tol)
            if isinstance(out, str):
                no_return.append(NoReturn((key[0] + 0.5 * (u0 + u1), key[1]), key, out))
                continue
            lo, hi, d_lo, d_hi = out
            # a cycle squeezed to width tol leaves |d| near |P' - 1| tol; a
            # jump of P keeps |d| at the size of the jump
            if max(abs(d_lo), abs(d_hi)) > 100 * tol:
                jumps.append((key[0] + 0.5 * (lo + hi), key[1]))
                continue
            cycle = _finish(params, mapper, lo, hi, d_lo if d_lo else d0, d_hi, tol, equilibria)
            if cycle is not None:
                found.append(cycle)

    unique = []
    # widest loops first; ties between rays resolve the same way every run
    for c in sorted(found, key=lambda c: -(c.amplitude_box[0][1] - c.amplitude_box[0][0])):
        if not any(_same_cycle(c, k, mappers, tol) or _same_cycle(k, c, mappers, tol)
                   for k in unique):
            unique.append(c)
    unique.sort(key=lambda c: (c.anchor[1], c.anchor[0]))
    return CycleList(unique, no_return, jumps)
