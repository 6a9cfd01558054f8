"""Driven central qubit coupled to a single spin qubit.

Conventions (hbar = 1, every parameter an angular frequency):

* joint basis ordering is |central, bath> = |00>, |01>, |10>, |11>;
* the bath z-basis state |0> selects the detuning ``delta - g/2`` and
  |1> selects ``delta + g/2``;
* in the frame rotating at ``omega`` a sector evolves under
  ``delta_s Z + omega1 X``; the lab-frame propagator adds the dressing
  ``exp(-i omega t Z / 2)`` on the left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import linalg
from ._backend import kernels


@dataclass(frozen=True)
class ModelParams:
    """Field strengths and coupling of the central-qubit model."""

    omega0: float
    omega: float
    omega1: float
    g: float

    def __post_init__(self):
        for name in ("omega0", "omega", "omega1", "g"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, float(value))

    @property
    def delta(self) -> float:
        return self.omega - self.omega0

    @property
    def delta_plus(self) -> float:
        return self.delta + self.g / 2

    @property
    def delta_minus(self) -> float:
        return self.delta - self.g / 2

    @property
    def rabi_plus(self) -> float:
        return math.hypot(self.omega1, self.delta_plus)

    @property
    def rabi_minus(self) -> float:
        return math.hypot(self.omega1, self.delta_minus)

    def replace(self, **changes) -> "ModelParams":
        fields = {k: getattr(self, k) for k in ("omega0", "omega", "omega1", "g")}
        fields.update(changes)
        return ModelParams(**fields)


@dataclass(frozen=True)
class BathSector:
    """A block of the propagator labelled by the bath state it acts on."""

    label: str
    effective_detuning: float

    @classmethod
    def down(cls, params: ModelParams) -> "BathSector":
        """Sector of bath basis state |0> (detuning delta - g/2)."""
        return cls("bath0", params.delta_minus)

    @classmethod
    def up(cls, params: ModelParams) -> "BathSector":
        """Sector of bath basis state |1> (detuning delta + g/2)."""
        return cls("bath1", params.delta_plus)


def single_spin_sectors(params: ModelParams) -> tuple[BathSector, BathSector]:
    return BathSector.down(params), BathSector.up(params)


def dressing(params: ModelParams, t: float) -> np.ndarray:
    phase = params.omega * t / 2
    return np.diag([np.exp(-1j * phase), np.exp(1j * phase)])


def rotating_propagator(params: ModelParams, sector: BathSector, t: float) -> np.ndarray:
    """exp(-i (delta_s Z + omega1 X) t), the rotating-frame sector propagator."""
    return linalg.pauli_exp(params.omega1, 0.0, sector.effective_detuning, t)


def sector_propagator(
    params: ModelParams, sector: BathSector, t: float, dressed: bool = True
) -> np.ndarray:
    """Lab-frame 2x2 propagator of the central qubit within one bath sector.

    ``dressed=False`` drops the exp(-i omega t Z / 2) factor, leaving the
    rotating-frame propagator.
    """
    r = rotating_propagator(params, sector, t)
    if not dressed:
        return r
    phase = params.omega * t / 2
    d0, d1 = np.exp(-1j * phase), np.exp(1j * phase)
    return np.array([[d0 * r[0, 0], d0 * r[0, 1]], [d1 * r[1, 0], d1 * r[1, 1]]])


def joint_propagator(params: ModelParams, t: float, dressed: bool = True) -> np.ndarray:
    """4x4 propagator, block diagonal in the bath z-basis."""
    u = np.zeros((4, 4), dtype=complex)
    down, up = single_spin_sectors(params)
    # bath |0>: span{|00>, |10>} = indices (0, 2); bath |1>: indices (1, 3)
    for sector, idx in ((down, [0, 2]), (up, [1, 3])):
        u[np.ix_(idx, idx)] = sector_propagator(params, sector, t, dressed)
    return u


def lab_generator(params: ModelParams, sector: BathSector) -> Callable[[float], np.ndarray]:
    """Time-dependent lab-frame generator G_s(t) of one sector.

    G_s(t) = (delta_s + omega/2) Z + omega1 (cos(omega t) X + sin(omega t) Y),
    whose solution is ``sector_propagator``. Used as the ODE oracle.
    """
    cz = sector.effective_detuning + params.omega / 2
    w1, w = params.omega1, params.omega

    def generator(t: float) -> np.ndarray:
        drive = w1 * np.exp(-1j * w * t)
        return np.array([[cz, drive], [np.conj(drive), -cz]], dtype=complex)

    return generator


def integrated_propagator(
    params: ModelParams, sector: BathSector, t: float, dt: float = 1e-3
) -> np.ndarray:
    """Sector propagator obtained by RK4 integration of ``lab_generator``.

    Both columns are integrated in one batched kernel call.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    cz = np.full(2, sector.effective_detuning + params.omega / 2)
    w1 = np.full(2, params.omega1)
    w = np.full(2, params.omega)
    cols = kernels.rk4_lab_batch(cz, w1, w, np.eye(2, dtype=complex), float(t), float(dt))
    return np.asarray(cols).T
