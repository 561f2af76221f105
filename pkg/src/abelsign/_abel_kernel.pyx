# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Dormand-Prince 5(4) integrator for rho' = A rho^3 + B rho^2 + a1 rho.

Mirrors ``_abel_py`` step for step; the two must produce the same numbers up
to floating-point reassociation.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, fabs, pow, M_PI

cnp.import_array()

cdef enum:
    OK = 0
    BLOWUP = 1
    UNDERFLOW = 2
    MAXSTEPS = 3

cdef int MAX_STEPS = 2000000


cdef struct Coeffs:
    double f0, f1, f2, f3
    double g0, g1, g2, g3
    double a1


cdef inline double _rhs(Coeffs* k, double t, double y, double* gval) nogil:
    cdef double c = cos(t), s = sin(t)
    cdef double cc = c * c, ss = s * s
    cdef double f = ((k.f0 * c + k.f1 * s) * c + k.f2 * ss) * c + k.f3 * ss * s
    cdef double g = ((k.g0 * c + k.g1 * s) * c + k.g2 * ss) * c + k.g3 * ss * s
    cdef double gp = (-3.0 * k.g0 * cc * s + k.g1 * (cc * c - 2.0 * c * ss)
                      + k.g2 * (2.0 * cc * s - ss * s) + 3.0 * k.g3 * ss * c)
    cdef double A = g * (k.a1 * g - f)
    cdef double B = f - 2.0 * k.a1 * g - gp
    gval[0] = g
    return ((A * y + B) * y + k.a1) * y


cdef int _integrate(Coeffs* k, double y0, double rtol, double atol, double blowup,
                    double* y_out, double* t_out, double* cherkas_out, long* steps_out) nogil:
    cdef double t = 0.0, T = 2.0 * M_PI
    cdef double y = y0, h = 1e-2, ynew, err, sc, fac, g
    cdef double k1, k2, k3, k4, k5, k6, k7
    cdef double mincher
    cdef long steps = 0
    cdef int status = OK
    cdef bint last

    k1 = _rhs(k, t, y, &g)
    mincher = 1.0 - g * y
    while t < T:
        if steps >= MAX_STEPS:
            status = MAXSTEPS
            break
        last = t + h >= T
        if last:
            h = T - t
        k2 = _rhs(k, t + h / 5.0, y + h * (k1 / 5.0), &g)
        k3 = _rhs(k, t + 3.0 * h / 10.0, y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2), &g)
        k4 = _rhs(k, t + 4.0 * h / 5.0,
                  y + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3), &g)
        k5 = _rhs(k, t + 8.0 * h / 9.0,
                  y + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2
                           + 64448.0 / 6561.0 * k3 - 212.0 / 729.0 * k4), &g)
        k6 = _rhs(k, t + h,
                  y + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 + 46732.0 / 5247.0 * k3
                           + 49.0 / 176.0 * k4 - 5103.0 / 18656.0 * k5), &g)
        ynew = y + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4
                        - 2187.0 / 6784.0 * k5 + 11.0 / 84.0 * k6)
        k7 = _rhs(k, t + h, ynew, &g)
        err = h * (71.0 / 57600.0 * k1 - 71.0 / 16695.0 * k3 + 71.0 / 1920.0 * k4
                   - 17253.0 / 339200.0 * k5 + 22.0 / 525.0 * k6 - 1.0 / 40.0 * k7)
        sc = atol + rtol * (fabs(y) if fabs(y) > fabs(ynew) else fabs(ynew))
        err = fabs(err) / sc
        if err != err:
            err = 1e10
        if err <= 1.0:
            steps += 1
            t = T if last else t + h
            y = ynew
            k1 = k7
            if 1.0 - g * y < mincher:
                mincher = 1.0 - g * y
            if fabs(y) > blowup:
                status = BLOWUP
                break
            fac = 5.0 if err == 0.0 else 0.9 * pow(err, -0.2)
            if fac > 5.0:
                fac = 5.0
            h = h * (fac if fac > 0.2 else 0.2)
        else:
            fac = 0.9 * pow(err, -0.2)
            h = h * (fac if fac > 0.2 else 0.2)
            if h < 1e-14 * T:
                status = UNDERFLOW
                break
    y_out[0] = y
    t_out[0] = t
    cherkas_out[0] = mincher
    steps_out[0] = steps
    return status


cdef Coeffs _coeffs(fc, gc, double a1):
    cdef Coeffs k
    k.f0, k.f1, k.f2, k.f3 = fc[0], fc[1], fc[2], fc[3]
    k.g0, k.g1, k.g2, k.g3 = gc[0], gc[1], gc[2], gc[3]
    k.a1 = a1
    return k


def integrate(fc, gc, double a1, double rho0, double rtol, double atol, double blowup):
    """Integrate over one turn; returns ``(rho, status, theta, min(1 - g rho), steps)``."""
    cdef Coeffs k = _coeffs(fc, gc, a1)
    cdef double y, t, ch
    cdef long steps
    cdef int status
    with nogil:
        status = _integrate(&k, rho0, rtol, atol, blowup, &y, &t, &ch, &steps)
    return y, status, t, ch, steps


def return_map_batch(fc, gc, double a1, rho0s, double rtol, double atol, double blowup):
    """Vectorised :func:`integrate` over an array of initial values (GIL released)."""
    cdef Coeffs k = _coeffs(fc, gc, a1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] r0 = np.ascontiguousarray(rho0s, dtype=np.float64)
    cdef Py_ssize_t n = r0.shape[0], i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vals = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] thetas = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cher = np.empty(n)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] status = np.empty(n, dtype=np.int32)
    cdef double* pv = &vals[0] if n else NULL
    cdef double* pt = &thetas[0] if n else NULL
    cdef double* pc = &cher[0] if n else NULL
    cdef long steps
    with nogil:
        for i in range(n):
            status[i] = _integrate(&k, r0[i], rtol, atol, blowup, &pv[i], &pt[i], &pc[i], &steps)
    return vals, status, thetas, cher
