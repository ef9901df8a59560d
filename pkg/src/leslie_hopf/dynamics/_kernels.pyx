# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Dormand-Prince 5(4) kernels for the reduced predator-prey flow.

Two orbit-equivalent forms are supported:

* ``form == 0``: the rational form
  ``x' = x(1 - x/K) - m x y / (x^2 + b)``, ``y' = s y (1 - y/x)``
  with ``m = (K - 1)(b + 1)/K``;
* ``form == 1``: the quintic polynomial form
  ``x' = (x^2 + b)(K - x) x^2 - (K - 1)(b + 1) x^2 y``,
  ``y' = K s y (x - y)(x^2 + b)``.

The pure-Python module ``_kernels_py`` mirrors this file line by line.
"""

import numpy as np
from libc.math cimport fabs, fmax, fmin, pow

cdef double C2 = 1.0 / 5.0
cdef double C3 = 3.0 / 10.0
cdef double C4 = 4.0 / 5.0
cdef double C5 = 8.0 / 9.0

cdef double A21 = 1.0 / 5.0
cdef double A31 = 3.0 / 40.0
cdef double A32 = 9.0 / 40.0
cdef double A41 = 44.0 / 45.0
cdef double A42 = -56.0 / 15.0
cdef double A43 = 32.0 / 9.0
cdef double A51 = 19372.0 / 6561.0
cdef double A52 = -25360.0 / 2187.0
cdef double A53 = 64448.0 / 6561.0
cdef double A54 = -212.0 / 729.0
cdef double A61 = 9017.0 / 3168.0
cdef double A62 = -355.0 / 33.0
cdef double A63 = 46732.0 / 5247.0
cdef double A64 = 49.0 / 176.0
cdef double A65 = -5103.0 / 18656.0
cdef double B1 = 35.0 / 384.0
cdef double B3 = 500.0 / 1113.0
cdef double B4 = 125.0 / 192.0
cdef double B5 = -2187.0 / 6784.0
cdef double B6 = 11.0 / 84.0
# 5th-order minus embedded 4th-order weights
cdef double E1 = 71.0 / 57600.0
cdef double E3 = -71.0 / 16695.0
cdef double E4 = 71.0 / 1920.0
cdef double E5 = -17253.0 / 339200.0
cdef double E6 = 22.0 / 525.0
cdef double E7 = -1.0 / 40.0

cdef struct Model:
    double K
    double b
    double s
    double m
    double sign
    double xc
    double yc
    int form


cdef inline void rhs(Model* p, double u, double v, double* dx, double* dy) noexcept nogil:
    cdef double x = p.xc + u
    cdef double y = p.yc + v
    cdef double x2 = x * x
    if p.form == 0:
        dx[0] = p.sign * (x * (1.0 - x / p.K) - p.m * x * y / (x2 + p.b))
        dy[0] = p.sign * (p.s * y * (1.0 - y / x))
    else:
        dx[0] = p.sign * ((x2 + p.b) * (p.K - x) * x2 - (p.K - 1.0) * (p.b + 1.0) * x2 * y)
        dy[0] = p.sign * (p.K * p.s * y * (x - y) * (x2 + p.b))


cdef inline double dp_step(Model* p, double x, double y, double h,
                           double* xn, double* yn, double rtol, double atol) noexcept nogil:
    """One DOPRI5 step in offset coordinates; returns the scaled error norm
    (1e300 when a stage leaves the open half-plane x > 0)."""
    cdef double k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y, k5x, k5y, k6x, k6y, k7x, k7y
    cdef double xs, ys, ex, ey, sc
    cdef double xlim = -p.xc
    rhs(p, x, y, &k1x, &k1y)
    xs = x + h * A21 * k1x
    ys = y + h * A21 * k1y
    if xs <= xlim:
        return 1e300
    rhs(p, xs, ys, &k2x, &k2y)
    xs = x + h * (A31 * k1x + A32 * k2x)
    ys = y + h * (A31 * k1y + A32 * k2y)
    if xs <= xlim:
        return 1e300
    rhs(p, xs, ys, &k3x, &k3y)
    xs = x + h * (A41 * k1x + A42 * k2x + A43 * k3x)
    ys = y + h * (A41 * k1y + A42 * k2y + A43 * k3y)
    if xs <= xlim:
        return 1e300
    rhs(p, xs, ys, &k4x, &k4y)
    xs = x + h * (A51 * k1x + A52 * k2x + A53 * k3x + A54 * k4x)
    ys = y + h * (A51 * k1y + A52 * k2y + A53 * k3y + A54 * k4y)
    if xs <= xlim:
        return 1e300
    rhs(p, xs, ys, &k5x, &k5y)
    xs = x + h * (A61 * k1x + A62 * k2x + A63 * k3x + A64 * k4x + A65 * k5x)
    ys = y + h * (A61 * k1y + A62 * k2y + A63 * k3y + A64 * k4y + A65 * k5y)
    if xs <= xlim:
        return 1e300
    rhs(p, xs, ys, &k6x, &k6y)
    xn[0] = x + h * (B1 * k1x + B3 * k3x + B4 * k4x + B5 * k5x + B6 * k6x)
    yn[0] = y + h * (B1 * k1y + B3 * k3y + B4 * k4y + B5 * k5y + B6 * k6y)
    if xn[0] <= xlim or yn[0] < -p.yc:
        return 1e300
    rhs(p, xn[0], yn[0], &k7x, &k7y)
    ex = h * (E1 * k1x + E3 * k3x + E4 * k4x + E5 * k5x + E6 * k6x + E7 * k7x)
    ey = h * (E1 * k1y + E3 * k3y + E4 * k4y + E5 * k5y + E6 * k6y + E7 * k7y)
    # radius-scaled norm: offset coordinates keep small orbits resolved
    sc = atol + rtol * fmax(fmax(fabs(x), fabs(xn[0])), fmax(fabs(y), fabs(yn[0])))
    return fmax(fabs(ex), fabs(ey)) / sc


cdef inline double next_h(double h, double err) noexcept nogil:
    cdef double fac
    if err == 0.0:
        return h * 5.0
    fac = 0.9 * pow(err, -0.2)
    return h * fmin(5.0, fmax(0.2, fac))


cdef double initial_h(Model* p, double x, double y, double rtol, double atol):
    cdef double dx, dy, d
    rhs(p, x, y, &dx, &dy)
    d = fmax(fabs(dx), fabs(dy)) / (atol + rtol * fmax(fabs(x), fabs(y)))
    if d < 1e-300:
        return 1e-3
    return fmin(1e-3, 0.01 / d)


cdef Model make_model(double K, double b, double s, int form, double direction,
                      double xc, double yc):
    cdef Model p
    p.xc = xc
    p.yc = yc
    p.K = K
    p.b = b
    p.s = s
    p.m = (K - 1.0) * (b + 1.0) / K
    p.form = form
    p.sign = direction
    return p


def integrate(double K, double b, double s, int form, double x0, double y0,
              double t_end, double rtol, double atol, long max_steps,
              double h_min, double direction=1.0, long stride=1):
    """Integrate to ``t_end`` recording every ``stride``-th accepted step.

    Returns ``(t, x, y, n_accepted, n_rejected, max_err, status)`` where
    status is 0 (done), 1 (step underflow) or 2 (step budget exhausted).
    """
    cdef Model p = make_model(K, b, s, form, direction, 0.0, 0.0)
    cdef double t = 0.0, x = x0, y = y0, h, xn, yn, err, max_err = 0.0
    cdef long n_acc = 0, n_rej = 0
    cdef int status = 0
    ts = [0.0]
    xs = [x0]
    ys = [y0]
    h = initial_h(&p, x, y, rtol, atol)
    while t < t_end:
        if n_acc >= max_steps:
            status = 2
            break
        if t + h > t_end:
            h = t_end - t
        err = dp_step(&p, x, y, h, &xn, &yn, rtol, atol)
        if err <= 1.0:
            t += h
            x = xn
            y = yn
            n_acc += 1
            if err > max_err:
                max_err = err
            if n_acc % stride == 0 or t >= t_end:
                ts.append(t)
                xs.append(x)
                ys.append(y)
            h = next_h(h, err)
        else:
            n_rej += 1
            if err >= 1e299:
                h *= 0.5
            else:
                h = next_h(h, err)
            if h < h_min:
                status = 1
                break
    if ts[len(ts) - 1] != t:
        ts.append(t)
        xs.append(x)
        ys.append(y)
    return (np.asarray(ts), np.asarray(xs), np.asarray(ys),
            n_acc, n_rej, max_err, status)


def first_return(double K, double b, double s, int form, double xc, double yc,
                 double x0, double y0, double rtol, double atol,
                 double t_max, long max_steps, double h_min, double t_tol=1e-12,
                 double direction=1.0):
    """Follow the orbit from ``(xc + x0, yc + y0)`` to its next upward
    crossing of the ray ``{y = yc, x > xc}``.

    With ``direction = -1`` time runs backwards and the crossing sought is
    downward, so the same ray serves as section for the reversed flow.

    Works in coordinates relative to ``(xc, yc)`` so the error control scales
    with the distance from the ray origin. Returns
    ``(u_hit, t_hit, status, ulo, uhi, vlo, vhi, n_steps)`` in those relative
    coordinates; status 0 means a crossing was found, 1 step underflow,
    2 no return within ``t_max`` or ``max_steps``.
    """
    cdef Model p = make_model(K, b, s, form, direction, xc, yc)
    cdef double y_sec = 0.0, x_min = 0.0, up = 1.0 if direction > 0 else -1.0
    cdef double t = 0.0, x = x0, y = y0, h, xn, yn, err
    cdef double xlo = x0, xhi = x0, ylo = y0, yhi = y0
    cdef double lo, hi, mid, xm, ym
    cdef long n = 0
    h = initial_h(&p, x, y, rtol, atol)
    while True:
        if t >= t_max or n >= max_steps:
            return (x, t, 2, xlo, xhi, ylo, yhi, n)
        err = dp_step(&p, x, y, h, &xn, &yn, rtol, atol)
        if err > 1.0:
            if err >= 1e299:
                h *= 0.5
            else:
                h = next_h(h, err)
            if h < h_min:
                return (x, t, 1, xlo, xhi, ylo, yhi, n)
            continue
        n += 1
        if n > 1 and up * y < y_sec and up * yn >= y_sec and xn > x_min:
            # bisection on the sub-step length from the step start
            lo = 0.0
            hi = h
            while hi - lo > t_tol:
                mid = 0.5 * (lo + hi)
                dp_step(&p, x, y, mid, &xm, &ym, rtol, atol)
                if up * ym < y_sec:
                    lo = mid
                else:
                    hi = mid
            dp_step(&p, x, y, hi, &xm, &ym, rtol, atol)
            xlo = fmin(xlo, xm)
            xhi = fmax(xhi, xm)
            return (xm, t + hi, 0, xlo, xhi, ylo, yhi, n)
        t += h
        x = xn
        y = yn
        xlo = fmin(xlo, x)
        xhi = fmax(xhi, x)
        ylo = fmin(ylo, y)
        yhi = fmax(yhi, y)
        h = next_h(h, err)
