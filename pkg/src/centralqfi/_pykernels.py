"""Pure-Python (numpy) implementations of the hot kernels.

Same signatures and semantics as the compiled ``_ckernels`` module, which is
preferred when importable.
"""

from __future__ import annotations

import math

import numpy as np

SERIES_THRESHOLD = 1e-6
# cap on K * T * S * 2 complex temporaries per chunk in mixture_sweep
_CHUNK_ELEMENTS = 1 << 21


def rk4_lab_batch(cz, omega1, omega, v0, t_end, dt):
    """RK4 solution of dv/dt = -i G(t) v for a batch of lab-frame generators.

    Trajectory ``b`` uses G(t) = cz[b] Z + omega1[b] (cos(omega[b] t) X + sin(omega[b] t) Y)
    and starts from ``v0[b]``. Returns an array of shape (B, 2).
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if t_end < 0:
        raise ValueError(f"t_end must be non-negative, got {t_end}")
    cz = np.asarray(cz, dtype=float)
    w1 = np.asarray(omega1, dtype=float)
    w = np.asarray(omega, dtype=float)
    v = np.array(v0, dtype=complex)
    x, y = v[:, 0].copy(), v[:, 1].copy()
    if t_end == 0:
        return np.stack([x, y], axis=1)
    n = max(1, math.ceil(t_end / dt - 1e-9))
    h = t_end / n

    def f(t, x, y):
        drive = w1 * np.exp(-1j * w * t)
        return (
            -1j * (cz * x + drive * y),
            -1j * (np.conj(drive) * x - cz * y),
        )

    for k in range(n):
        t = k * h
        k1x, k1y = f(t, x, y)
        k2x, k2y = f(t + h / 2, x + (h / 2) * k1x, y + (h / 2) * k1y)
        k3x, k3y = f(t + h / 2, x + (h / 2) * k2x, y + (h / 2) * k2y)
        k4x, k4y = f(t + h, x + h * k3x, y + h * k3y)
        x = x + (h / 6) * (k1x + 2 * k2x + 2 * k3x + k4x)
        y = y + (h / 6) * (k1y + 2 * k2y + 2 * k3y + k4y)
    return np.stack([x, y], axis=1)


def _sector_blocks(deltas, omega1, omega, times, dressed):
    """Propagators of shape (T, S, 2, 2) for every (time, sector) pair."""
    t = np.asarray(times, dtype=float)[:, None]
    d = np.asarray(deltas, dtype=float)[None, :]
    w = np.sqrt(omega1 * omega1 + d * d)
    x = w * t
    small = np.abs(x) < SERIES_THRESHOLD
    with np.errstate(divide="ignore", invalid="ignore"):
        sinc = np.where(small, t * (1.0 - x * x / 6.0), np.sin(x) / np.where(small, 1.0, w))
    cs = np.cos(x)
    u = np.empty(x.shape + (2, 2), dtype=complex)
    u[..., 0, 0] = cs - 1j * d * sinc
    u[..., 0, 1] = -1j * omega1 * sinc
    u[..., 1, 0] = -1j * omega1 * sinc
    u[..., 1, 1] = cs + 1j * d * sinc
    if dressed:
        phase = np.exp(-0.5j * omega * t)[..., None]
        u[..., 0, :] *= phase
        u[..., 1, :] *= np.conj(phase)
    return u


def mixture_sweep(deltas, weights, omega1, omega, dressed, q0, dq0, times, with_derivative=True):
    """Bloch vectors of a weighted mixture of sector-evolved central-qubit states.

    For every central state k (amplitudes ``q0[k]``, derivative ``dq0[k]``)
    and time t, each sector s evolves the qubit with its own detuning and the
    reduced state is sum_s weights[k, s] U_s q q^dagger U_s^dagger.

    Returns ``(s, ds)``, each of shape (K, T, 3). ``ds`` is zero when
    ``with_derivative`` is false.
    """
    q0 = np.asarray(q0, dtype=complex)
    dq0 = np.asarray(dq0, dtype=complex)
    weights = np.asarray(weights, dtype=float)
    times = np.asarray(times, dtype=float)
    u = _sector_blocks(deltas, float(omega1), float(omega), times, bool(dressed))
    n_k, n_t, n_s = q0.shape[0], times.shape[0], u.shape[1]
    s = np.zeros((n_k, n_t, 3))
    ds = np.zeros((n_k, n_t, 3))
    step = max(1, _CHUNK_ELEMENTS // max(1, n_t * n_s * 2))
    for lo in range(0, n_k, step):
        sl = slice(lo, min(n_k, lo + step))
        w = weights[sl][:, None, :]
        a = np.einsum("tsij,kj->ktsi", u, q0[sl])
        a0, a1 = a[..., 0], a[..., 1]
        rho01 = np.sum(w * a0 * np.conj(a1), axis=2)
        s[sl, :, 0] = 2 * rho01.real
        s[sl, :, 1] = -2 * rho01.imag
        s[sl, :, 2] = np.sum(w * (np.abs(a0) ** 2 - np.abs(a1) ** 2), axis=2)
        if with_derivative:
            da = np.einsum("tsij,kj->ktsi", u, dq0[sl])
            da0, da1 = da[..., 0], da[..., 1]
            drho01 = np.sum(w * (da0 * np.conj(a1) + a0 * np.conj(da1)), axis=2)
            ds[sl, :, 0] = 2 * drho01.real
            ds[sl, :, 1] = -2 * drho01.imag
            ds[sl, :, 2] = np.sum(
                w * 2 * (np.conj(a0) * da0 - np.conj(a1) * da1).real, axis=2
            )
    return s, ds
