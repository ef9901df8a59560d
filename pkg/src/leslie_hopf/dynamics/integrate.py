"""Adaptive Dormand-Prince integration of the model in the open quadrant."""
from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError, StiffnessError
from ..model import AlphaBetaParams, Form, ModelParams
from . import _backend

__all__ = ["Trajectory", "FlowSpec", "flow_spec", "integrate_orbit"]

DEFAULT_TOL = 1e-10
DEFAULT_H_MIN = 1e-14
DEFAULT_MAX_STEPS = 2_000_000


@dataclass(frozen=True)
class FlowSpec:
    """Float data handed to the kernels: ``rhs = scale * field(form_code)``."""

    K: float
    b: float
    s: float
    form_code: int
    scale: float
    form: Form

    def args(self):
        return self.K, self.b, self.s, self.form_code


def flow_spec(params, form: Form | str | None = None) -> FlowSpec:
    """Kernel arguments for ``params`` in the requested form.

    The default is the alpha-beta form for :class:`AlphaBetaParams` and the
    quintic form otherwise. The alpha-beta field is ``K`` times the quintic
    one, so it runs through the quintic kernel with time scaled by ``K``.
    """
    if form is None:
        form = Form.ALPHA_BETA if isinstance(params, AlphaBetaParams) else Form.QUINTIC
    form = Form(form)
    if form is Form.ALPHA_BETA and not isinstance(params, AlphaBetaParams):
        raise TypeError("the alpha-beta form needs AlphaBetaParams")
    model = params.to_model() if isinstance(params, AlphaBetaParams) else params
    if not isinstance(model, ModelParams):
        raise TypeError(f"expected ModelParams or AlphaBetaParams, got {type(params).__name__}")
    K, b, s = float(model.K), float(model.b), float(model.s)
    if form is Form.RATIONAL:
        return FlowSpec(K, b, s, 0, 1.0, form)
    return FlowSpec(K, b, s, 1, K if form is Form.ALPHA_BETA else 1.0, form)


@dataclass(frozen=True)
class Trajectory:
    """Accepted samples of one orbit with the integrator's bookkeeping.

    ``complete`` is False when the step budget ran out before ``t_span``.
    """

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    steps: int
    rejected: int
    max_error: float
    tol: float
    form: Form
    backend: str
    complete: bool = True
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.t)

    @property
    def samples(self) -> list:
        return list(zip(self.t.tolist(), self.x.tolist(), self.y.tolist()))

    @property
    def end(self) -> tuple:
        return float(self.x[-1]), float(self.y[-1])

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write(f"# form={self.form.value} tol={self.tol!r} backend={self.backend} "
                  f"steps={self.steps} rejected={self.rejected} "
                  f"max_error={self.max_error!r}\n")
        out.write("t,x,y\n")
        for t, x, y in zip(self.t.tolist(), self.x.tolist(), self.y.tolist()):
            out.write(f"{t!r},{x!r},{y!r}\n")
        return out.getvalue()


def integrate_orbit(params, x0, t_span: float, tol: float = DEFAULT_TOL, *,
                    form: Form | str | None = None, backward: bool = False,
                    stride: int = 1, max_steps: int = DEFAULT_MAX_STEPS,
                    h_min: float = DEFAULT_H_MIN, backend: str | None = None) -> Trajectory:
    """Integrate from ``x0`` over ``[0, t_span]`` (or ``[-t_span, 0]`` when
    ``backward``), keeping the scaled local error of every step below ``tol``.

    Stages or steps that leave ``x > 0, y >= 0`` are rejected and retried
    with half the step. If the step falls below ``h_min`` the partial orbit
    is attached to the raised :class:`StiffnessError`.
    """
    x_start, y_start = (float(v) for v in x0)
    if not (x_start > 0 and y_start > 0):
        raise DomainError(f"start point must lie in the open first quadrant, got {x0}")
    if not tol > 0 or not t_span >= 0:
        raise DomainError("need tol > 0 and t_span >= 0")
    spec = flow_spec(params, form)
    kern = _backend.kernels(backend)
    direction = -spec.scale if backward else spec.scale
    t, x, y, n_acc, n_rej, max_err, status = kern.integrate(
        *spec.args(), x_start, y_start, float(t_span), tol, tol * 1e-3, max_steps, h_min,
        direction, stride)
    if backward:
        t = -t
    traj = Trajectory(t, x, y, n_acc, n_rej, max_err, tol, spec.form,
                      _backend.backend_name(kern), status == 0)
    if status == 1:
        raise StiffnessError(
            f"step size fell below {h_min:g} at t={t[-1]:.6g}, (x, y)=({x[-1]:.6g}, {y[-1]:.6g})",
            traj)
    return traj
