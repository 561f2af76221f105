"""Pure-Python Dormand-Prince 5(4) integrator, the fallback for ``_abel_kernel``."""

from __future__ import annotations

import math

import numpy as np

OK, BLOWUP, UNDERFLOW, MAXSTEPS = 0, 1, 2, 3
MAX_STEPS = 2_000_000
TWO_PI = 2.0 * math.pi


def _make_rhs(fc, gc, a1):
    f0, f1, f2, f3 = (float(v) for v in fc)
    g0, g1, g2, g3 = (float(v) for v in gc)
    a1 = float(a1)
    cos, sin = math.cos, math.sin

    def rhs(t, y):
        c, s = cos(t), sin(t)
        cc, ss = c * c, s * s
        f = ((f0 * c + f1 * s) * c + f2 * ss) * c + f3 * ss * s
        g = ((g0 * c + g1 * s) * c + g2 * ss) * c + g3 * ss * s
        gp = (-3.0 * g0 * cc * s + g1 * (cc * c - 2.0 * c * ss)
              + g2 * (2.0 * cc * s - ss * s) + 3.0 * g3 * ss * c)
        A = g * (a1 * g - f)
        B = f - 2.0 * a1 * g - gp
        return ((A * y + B) * y + a1) * y, g

    return rhs


def integrate(fc, gc, a1, rho0, rtol, atol, blowup):
    """Integrate over one turn; returns ``(rho, status, theta, min(1 - g rho), steps)``."""
    rhs = _make_rhs(fc, gc, a1)
    t, T = 0.0, TWO_PI
    y, h = float(rho0), 1e-2
    steps, status = 0, OK
    k1, g = rhs(t, y)
    mincher = 1.0 - g * y
    while t < T:
        if steps >= MAX_STEPS:
            status = MAXSTEPS
            break
        last = t + h >= T
        if last:
            h = T - t
        k2, _ = rhs(t + h / 5.0, y + h * (k1 / 5.0))
        k3, _ = rhs(t + 3.0 * h / 10.0, y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2))
        k4, _ = rhs(t + 4.0 * h / 5.0, y + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3))
        k5, _ = rhs(
            t + 8.0 * h / 9.0,
            y + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2
                     + 64448.0 / 6561.0 * k3 - 212.0 / 729.0 * k4),
        )
        k6, _ = rhs(
            t + h,
            y + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 + 46732.0 / 5247.0 * k3
                     + 49.0 / 176.0 * k4 - 5103.0 / 18656.0 * k5),
        )
        ynew = y + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4
                        - 2187.0 / 6784.0 * k5 + 11.0 / 84.0 * k6)
        k7, g = rhs(t + h, ynew)
        err = h * (71.0 / 57600.0 * k1 - 71.0 / 16695.0 * k3 + 71.0 / 1920.0 * k4
                   - 17253.0 / 339200.0 * k5 + 22.0 / 525.0 * k6 - 1.0 / 40.0 * k7)
        sc = atol + rtol * max(abs(y), abs(ynew))
        err = abs(err) / sc
        if err != err:
            err = 1e10
        if err <= 1.0:
            steps += 1
            t = T if last else t + h
            y = ynew
            k1 = k7
            mincher = min(mincher, 1.0 - g * y)
            if abs(y) > blowup:
                status = BLOWUP
                break
            fac = 5.0 if err == 0.0 else min(5.0, 0.9 * err ** -0.2)
            h *= max(fac, 0.2)
        else:
            h *= max(0.9 * err ** -0.2, 0.2)
            if h < 1e-14 * T:
                status = UNDERFLOW
                break
    return y, status, t, mincher, steps


def return_map_batch(fc, gc, a1, rho0s, rtol, atol, blowup):
    r0 = np.ascontiguousarray(rho0s, dtype=np.float64)
    n = r0.shape[0]
    vals, thetas, cher = np.empty(n), np.empty(n), np.empty(n)
    status = np.empty(n, dtype=np.int32)
    for i in range(n):
        vals[i], status[i], thetas[i], cher[i], _ = integrate(fc, gc, a1, r0[i], rtol, atol, blowup)
    return vals, status, thetas, cher
