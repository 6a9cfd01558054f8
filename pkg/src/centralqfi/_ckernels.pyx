# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the kernels in ``_pykernels``; same signatures."""

import numpy as np

from libc.math cimport ceil, cos, sin, sqrt, fabs

cdef double SERIES_THRESHOLD = 1e-6

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex conj(double complex)
    double creal(double complex)
    double cimag(double complex)


cdef inline void _lab_rhs(double cz, double w1, double w, double t,
                          double complex x, double complex y,
                          double complex* fx, double complex* fy) noexcept nogil:
    cdef double complex drive = w1 * cexp(-1j * w * t)
    fx[0] = -1j * (cz * x + drive * y)
    fy[0] = -1j * (conj(drive) * x - cz * y)


def rk4_lab_batch(cz, omega1, omega, v0, double t_end, double dt):
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if t_end < 0:
        raise ValueError(f"t_end must be non-negative, got {t_end}")
    cdef double[::1] czv = np.ascontiguousarray(cz, dtype=float)
    cdef double[::1] w1v = np.ascontiguousarray(omega1, dtype=float)
    cdef double[::1] wv = np.ascontiguousarray(omega, dtype=float)
    out = np.array(v0, dtype=complex, order="C")
    if t_end == 0:
        return out
    cdef double complex[:, ::1] o = out
    cdef Py_ssize_t n_b = o.shape[0], b
    cdef long n = <long>ceil(t_end / dt - 1e-9), k
    if n < 1:
        n = 1
    cdef double h = t_end / n, t, c, w1, w
    cdef double complex x, y, k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y
    with nogil:
        for b in range(n_b):
            c, w1, w = czv[b], w1v[b], wv[b]
            x, y = o[b, 0], o[b, 1]
            for k in range(n):
                t = k * h
                _lab_rhs(c, w1, w, t, x, y, &k1x, &k1y)
                _lab_rhs(c, w1, w, t + h / 2, x + (h / 2) * k1x, y + (h / 2) * k1y, &k2x, &k2y)
                _lab_rhs(c, w1, w, t + h / 2, x + (h / 2) * k2x, y + (h / 2) * k2y, &k3x, &k3y)
                _lab_rhs(c, w1, w, t + h, x + h * k3x, y + h * k3y, &k4x, &k4y)
                x = x + (h / 6) * (k1x + 2 * k2x + 2 * k3x + k4x)
                y = y + (h / 6) * (k1y + 2 * k2y + 2 * k3y + k4y)
            o[b, 0] = x
            o[b, 1] = y
    return out


def mixture_sweep(deltas, weights, double omega1, double omega, bint dressed,
                  q0, dq0, times, bint with_derivative=True):
    cdef double[::1] dv = np.ascontiguousarray(deltas, dtype=float)
    cdef double[:, ::1] wv = np.ascontiguousarray(weights, dtype=float)
    cdef double complex[:, ::1] qv = np.ascontiguousarray(q0, dtype=complex)
    cdef double complex[:, ::1] dqv = np.ascontiguousarray(dq0, dtype=complex)
    cdef double[::1] tv = np.ascontiguousarray(times, dtype=float)
    cdef Py_ssize_t n_k = qv.shape[0], n_t = tv.shape[0], n_s = dv.shape[0]
    s_arr = np.zeros((n_k, n_t, 3))
    ds_arr = np.zeros((n_k, n_t, 3))
    cdef double[:, :, ::1] s = s_arr
    cdef double[:, :, ::1] ds = ds_arr
    # propagator entries per (t, sector): u00, u01, u10, u11
    u_arr = np.empty((n_t, n_s, 4), dtype=complex)
    cdef double complex[:, :, ::1] u = u_arr
    cdef Py_ssize_t i, j, k
    cdef double t, d, w, x, sinc, cs
    cdef double complex p0, p1
    with nogil:
        for i in range(n_t):
            t = tv[i]
            if dressed:
                p0 = cexp(-0.5j * omega * t)
            else:
                p0 = 1.0
            p1 = conj(p0)
            for j in range(n_s):
                d = dv[j]
                w = sqrt(omega1 * omega1 + d * d)
                x = w * t
                if fabs(x) < SERIES_THRESHOLD:
                    sinc = t * (1.0 - x * x / 6.0)
                else:
                    sinc = sin(x) / w
                cs = cos(x)
                u[i, j, 0] = p0 * (cs - 1j * d * sinc)
                u[i, j, 1] = p0 * (-1j * omega1 * sinc)
                u[i, j, 2] = p1 * (-1j * omega1 * sinc)
                u[i, j, 3] = p1 * (cs + 1j * d * sinc)

    cdef double complex q_a, q_b, dq_a, dq_b, a0, a1, da0, da1, rho01, drho01
    cdef double z, dz, wt
    with nogil:
        for k in range(n_k):
            q_a, q_b = qv[k, 0], qv[k, 1]
            dq_a, dq_b = dqv[k, 0], dqv[k, 1]
            for i in range(n_t):
                rho01 = 0
                drho01 = 0
                z = 0
                dz = 0
                for j in range(n_s):
                    wt = wv[k, j]
                    a0 = u[i, j, 0] * q_a + u[i, j, 1] * q_b
                    a1 = u[i, j, 2] * q_a + u[i, j, 3] * q_b
                    rho01 = rho01 + wt * a0 * conj(a1)
                    z = z + wt * (creal(a0) * creal(a0) + cimag(a0) * cimag(a0)
                                  - creal(a1) * creal(a1) - cimag(a1) * cimag(a1))
                    if with_derivative:
                        da0 = u[i, j, 0] * dq_a + u[i, j, 1] * dq_b
                        da1 = u[i, j, 2] * dq_a + u[i, j, 3] * dq_b
                        drho01 = drho01 + wt * (da0 * conj(a1) + a0 * conj(da1))
                        dz = dz + wt * 2 * creal(conj(a0) * da0 - conj(a1) * da1)
                s[k, i, 0] = 2 * creal(rho01)
                s[k, i, 1] = -2 * cimag(rho01)
                s[k, i, 2] = z
                ds[k, i, 0] = 2 * creal(drho01)
                ds[k, i, 1] = -2 * cimag(drho01)
                ds[k, i, 2] = dz
    return s_arr, ds_arr
