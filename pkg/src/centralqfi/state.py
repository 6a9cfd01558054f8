"""Initial product states, joint evolution and the reduced central-qubit state."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, joint_propagator

TWO_PI = 2 * math.pi


def _wrap(value: float, period: float, closed: bool) -> float:
    if not math.isfinite(value):
        raise ValueError(f"angle must be finite, got {value}")
    if closed and 0.0 <= value <= period:
        return float(value)
    wrapped = math.fmod(value, period)
    if wrapped < 0:
        wrapped += period
    # fmod of a value just below a multiple can round up to the period itself
    if not closed and wrapped >= period:
        wrapped = 0.0
    return wrapped


@dataclass(frozen=True)
class InitialAngles:
    """Weight and phase angles of the central qubit (1) and spin qubit (2).

    Weights are reduced into [0, pi] and phases into [0, 2 pi). Shifting a
    weight by pi only flips the sign of that qubit's state, so wrapping does
    not change any observable.
    """

    theta1: float
    phi1: float
    theta2: float = 0.0
    phi2: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "theta1", _wrap(self.theta1, math.pi, closed=True))
        object.__setattr__(self, "theta2", _wrap(self.theta2, math.pi, closed=True))
        object.__setattr__(self, "phi1", _wrap(self.phi1, TWO_PI, closed=False))
        object.__setattr__(self, "phi2", _wrap(self.phi2, TWO_PI, closed=False))

    @property
    def phi12(self) -> float:
        return self.phi1 + self.phi2

    def replace(self, **changes) -> "InitialAngles":
        fields = dict(theta1=self.theta1, phi1=self.phi1, theta2=self.theta2, phi2=self.phi2)
        fields.update(changes)
        return InitialAngles(**fields)


@dataclass(frozen=True)
class QubitBloch:
    sx: float
    sy: float
    sz: float

    @classmethod
    def from_vector(cls, v) -> "QubitBloch":
        x, y, z = (float(c) for c in v)
        return cls(x, y, z)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.sx, self.sy, self.sz])


def qubit_amplitudes(theta: float, phi: float) -> np.ndarray:
    """cos(theta)|0> + sin(theta) e^{-i phi}|1>."""
    return np.array([math.cos(theta), math.sin(theta) * np.exp(-1j * phi)])


def prepare_initial(angles: InitialAngles) -> np.ndarray:
    """Joint amplitudes on |00>, |01>, |10>, |11> of the product initial state."""
    return np.kron(
        qubit_amplitudes(angles.theta1, angles.phi1),
        qubit_amplitudes(angles.theta2, angles.phi2),
    )


def evolve(state0, params: ModelParams, t: float, dressed: bool = True) -> np.ndarray:
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    return joint_propagator(params, t, dressed) @ np.asarray(state0, dtype=complex)


def coherence(state) -> complex:
    """<0|rho_q|1> of the reduced central-qubit state, b1 b3* + b2 b4*."""
    b = np.asarray(state)
    return b[0] * np.conj(b[2]) + b[1] * np.conj(b[3])


def reduced_bloch(state) -> QubitBloch:
    """Bloch vector Tr(rho_q sigma) of the central qubit after tracing out the bath.

    Uses the standard sigma_y, so sy = -2 Im(b1 b3* + b2 b4*).
    """
    b = np.asarray(state)
    r = coherence(b)
    p = np.abs(b) ** 2
    return QubitBloch(2 * r.real, -2 * r.imag, p[0] + p[1] - p[2] - p[3])


def bloch_norm(b: QubitBloch) -> float:
    return math.sqrt(b.sx * b.sx + b.sy * b.sy + b.sz * b.sz)


def purity(b: QubitBloch) -> float:
    return (1 + bloch_norm(b) ** 2) / 2
