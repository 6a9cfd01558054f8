"""Small fixed-size complex linear algebra.

Matrices are ``complex128`` numpy arrays of shape (2, 2) or (4, 4) and
vectors have shape (2,) or (4,). Everything here is a pure function of its
inputs; nothing is modified in place.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# below this value of |generator| * t the sinc factor is evaluated by series
SERIES_THRESHOLD = 1e-6


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def apply(a, v) -> np.ndarray:
    a = as_matrix(a)
    v = np.asarray(v, dtype=complex)
    if v.shape != (a.shape[1],):
        raise ValueError(f"cannot apply {a.shape} matrix to vector of shape {v.shape}")
    return a @ v


def pauli_exp(a: float, b: float, c: float, t: float) -> np.ndarray:
    """Return exp(-i t (a X + b Y + c Z)) in closed form.

    With W = sqrt(a^2 + b^2 + c^2) this is cos(Wt) I - i sin(Wt)/W (aX + bY + cZ).
    For W t below ``SERIES_THRESHOLD`` the factor sin(Wt)/W is replaced by
    t (1 - (Wt)^2 / 6), which is continuous at W = 0.
    """
    w = math.sqrt(a * a + b * b + c * c)
    x = w * t
    if abs(x) < SERIES_THRESHOLD:
        sinc = t * (1.0 - x * x / 6.0)
    else:
        sinc = math.sin(x) / w
    cs = math.cos(x)
    return np.array(
        [
            [complex(cs, -c * sinc), complex(-b * sinc, -a * sinc)],
            [complex(b * sinc, -a * sinc), complex(cs, c * sinc)],
        ]
    )


def unitarity_defect(u) -> float:
    """Largest entry magnitude of U^dagger U - I."""
    u = as_matrix(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def integrate_linear(
    generator: Callable[[float], np.ndarray],
    v0,
    t_end: float,
    dt: float,
) -> np.ndarray:
    """Integrate dv/dt = -i G(t) v from 0 to ``t_end`` with classical RK4.

    The step is shrunk to ``t_end / ceil(t_end / dt)`` so the last step lands
    exactly on ``t_end``.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if t_end < 0:
        raise ValueError(f"t_end must be non-negative, got {t_end}")
    v = np.array(v0, dtype=complex)
    if t_end == 0:
        return v
    n = max(1, math.ceil(t_end / dt - 1e-9))
    h = t_end / n

    def f(t, y):
        return -1j * (generator(t) @ y)

    for k in range(n):
        t = k * h
        k1 = f(t, v)
        k2 = f(t + h / 2, v + (h / 2) * k1)
        k3 = f(t + h / 2, v + (h / 2) * k2)
        k4 = f(t + h, v + h * k3)
        v = v + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
    return v
