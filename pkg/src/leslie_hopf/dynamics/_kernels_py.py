"""Pure-Python fallback for the compiled integrator kernels.

Mirrors ``_kernels.pyx`` step for step so both backends accept the same
arguments and return the same tuples.
"""
from __future__ import annotations

import numpy as np

C2, C3, C4, C5 = 1 / 5, 3 / 10, 4 / 5, 8 / 9
A21 = 1 / 5
A31, A32 = 3 / 40, 9 / 40
A41, A42, A43 = 44 / 45, -56 / 15, 32 / 9
A51, A52, A53, A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
A61, A62, A63, A64, A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
B1, B3, B4, B5, B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
E1, E3, E4, E5, E6, E7 = (71 / 57600, -71 / 16695, 71 / 1920, -17253 / 339200,
                          22 / 525, -1 / 40)

_OUT = 1e300


class _Model:
    __slots__ = ("K", "b", "s", "m", "sign", "form", "xc", "yc")

    def __init__(self, K, b, s, form, direction, xc=0.0, yc=0.0):
        self.xc = xc
        self.yc = yc
        self.K = K
        self.b = b
        self.s = s
        self.m = (K - 1.0) * (b + 1.0) / K
        self.form = form
        self.sign = direction

    def rhs(self, u, v):
        x = self.xc + u
        y = self.yc + v
        x2 = x * x
        if self.form == 0:
            return (self.sign * (x * (1.0 - x / self.K) - self.m * x * y / (x2 + self.b)),
                    self.sign * (self.s * y * (1.0 - y / x)))
        K, b = self.K, self.b
        return (self.sign * ((x2 + b) * (K - x) * x2 - (K - 1.0) * (b + 1.0) * x2 * y),
                self.sign * (K * self.s * y * (x - y) * (x2 + b)))


def _dp_step(p, x, y, h, rtol, atol):
    xlim = -p.xc
    k1x, k1y = p.rhs(x, y)
    xs = x + h * A21 * k1x
    ys = y + h * A21 * k1y
    if xs <= xlim:
        return _OUT, x, y
    k2x, k2y = p.rhs(xs, ys)
    xs = x + h * (A31 * k1x + A32 * k2x)
    ys = y + h * (A31 * k1y + A32 * k2y)
    if xs <= xlim:
        return _OUT, x, y
    k3x, k3y = p.rhs(xs, ys)
    xs = x + h * (A41 * k1x + A42 * k2x + A43 * k3x)
    ys = y + h * (A41 * k1y + A42 * k2y + A43 * k3y)
    if xs <= xlim:
        return _OUT, x, y
    k4x, k4y = p.rhs(xs, ys)
    xs = x + h * (A51 * k1x + A52 * k2x + A53 * k3x + A54 * k4x)
    ys = y + h * (A51 * k1y + A52 * k2y + A53 * k3y + A54 * k4y)
    if xs <= xlim:
        return _OUT, x, y
    k5x, k5y = p.rhs(xs, ys)
    xs = x + h * (A61 * k1x + A62 * k2x + A63 * k3x + A64 * k4x + A65 * k5x)
    ys = y + h * (A61 * k1y + A62 * k2y + A63 * k3y + A64 * k4y + A65 * k5y)
    if xs <= xlim:
        return _OUT, x, y
    k6x, k6y = p.rhs(xs, ys)
    xn = x + h * (B1 * k1x + B3 * k3x + B4 * k4x + B5 * k5x + B6 * k6x)
    yn = y + h * (B1 * k1y + B3 * k3y + B4 * k4y + B5 * k5y + B6 * k6y)
    if xn <= xlim or yn < -p.yc:
        return _OUT, xn, yn
    k7x, k7y = p.rhs(xn, yn)
    ex = h * (E1 * k1x + E3 * k3x + E4 * k4x + E5 * k5x + E6 * k6x + E7 * k7x)
    ey = h * (E1 * k1y + E3 * k3y + E4 * k4y + E5 * k5y + E6 * k6y + E7 * k7y)
    sc = atol + rtol * max(abs(x), abs(xn), abs(y), abs(yn))
    return max(abs(ex), abs(ey)) / sc, xn, yn


def _next_h(h, err):
    if err == 0.0:
        return h * 5.0
    return h * min(5.0, max(0.2, 0.9 * err ** -0.2))


def _initial_h(p, x, y, rtol, atol):
    dx, dy = p.rhs(x, y)
    d = max(abs(dx), abs(dy)) / (atol + rtol * max(abs(x), abs(y)))
    if d < 1e-300:
        return 1e-3
    return min(1e-3, 0.01 / d)


def integrate(K, b, s, form, x0, y0, t_end, rtol, atol, max_steps, h_min,
              direction=1.0, stride=1):
    p = _Model(K, b, s, form, direction)
    t, x, y = 0.0, x0, y0
    max_err = 0.0
    n_acc = n_rej = 0
    status = 0
    ts, xs, ys = [0.0], [x0], [y0]
    h = _initial_h(p, x, y, rtol, atol)
    while t < t_end:
        if n_acc >= max_steps:
            status = 2
            break
        if t + h > t_end:
            h = t_end - t
        err, xn, yn = _dp_step(p, x, y, h, rtol, atol)
        if err <= 1.0:
            t += h
            x, y = xn, yn
            n_acc += 1
            max_err = max(max_err, err)
            if n_acc % stride == 0 or t >= t_end:
                ts.append(t)
                xs.append(x)
                ys.append(y)
            h = _next_h(h, err)
        else:
            n_rej += 1
            h = h * 0.5 if err >= 1e299 else _next_h(h, err)
            if h < h_min:
                status = 1
                break
    if ts[-1] != t:
        ts.append(t)
        xs.append(x)
        ys.append(y)
    return np.asarray(ts), np.asarray(xs), np.asarray(ys), n_acc, n_rej, max_err, status


def first_return(K, b, s, form, xc, yc, x0, y0, rtol, atol, t_max,
                 max_steps, h_min, t_tol=1e-12, direction=1.0):
    p = _Model(K, b, s, form, direction, xc, yc)
    y_sec = x_min = 0.0
    up = 1.0 if direction > 0 else -1.0
    t, x, y = 0.0, x0, y0
    xlo = xhi = x0
    ylo = yhi = y0
    n = 0
    h = _initial_h(p, x, y, rtol, atol)
    while True:
        if t >= t_max or n >= max_steps:
            return x, t, 2, xlo, xhi, ylo, yhi, n
        err, xn, yn = _dp_step(p, x, y, h, rtol, atol)
        if err > 1.0:
            h = h * 0.5 if err >= 1e299 else _next_h(h, err)
            if h < h_min:
                return x, t, 1, xlo, xhi, ylo, yhi, n
            continue
        n += 1
        if n > 1 and up * y < y_sec <= up * yn and xn > x_min:
            lo, hi = 0.0, h
            while hi - lo > t_tol:
                mid = 0.5 * (lo + hi)
                _, xm, ym = _dp_step(p, x, y, mid, rtol, atol)
                if up * ym < y_sec:
                    lo = mid
                else:
                    hi = mid
            _, xm, ym = _dp_step(p, x, y, hi, rtol, atol)
            return xm, t + hi, 0, min(xlo, xm), max(xhi, xm), ylo, yhi, n
        t += h
        x, y = xn, yn
        xlo = min(xlo, x)
        xhi = max(xhi, x)
        ylo = min(ylo, y)
        yhi = max(yhi, y)
        h = _next_h(h, err)
