"""Central qubit coupled uniformly to N unpolarized bath spins.

An unpolarized bath is diagonal in the total-magnetization basis and the
dynamics are block diagonal there, so the reduced central state is a
binomially weighted mixture over magnetization sectors m = -N/2 .. N/2, each
evolving with detuning ``delta + g m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import BathSector, ModelParams, sector_propagator
from .qfi import BlochWithDerivative, EstimatedParameter, central_derivative, qfi_from_bloch
from .state import QubitBloch, qubit_amplitudes


@dataclass(frozen=True)
class BathSpec:
    n: int
    per_spin_coupling: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"bath size must be a positive integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @classmethod
    def from_params(cls, n: int, params: ModelParams) -> "BathSpec":
        return cls(n, params.g)


@dataclass(frozen=True)
class MagnetizationSector:
    m: float
    weight: float
    detuning_shift: float


def sectors(spec: BathSpec) -> list[MagnetizationSector]:
    """Magnetization sectors in ascending m with binomial weights C(n, k) / 2^n."""
    n = spec.n
    out = []
    for k in range(n + 1):
        m = k - n / 2
        out.append(MagnetizationSector(m, math.comb(n, k) / 2**n, spec.per_spin_coupling * m))
    return out


def sector_arrays(spec: BathSpec, params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
    """(effective detunings, weights) of every sector, ascending in m."""
    secs = sectors(spec)
    deltas = np.array([params.delta + s.detuning_shift for s in secs])
    weights = np.array([s.weight for s in secs])
    return deltas, weights


def reduced_bloch_bath(
    theta1: float,
    phi1: float,
    spec: BathSpec,
    params: ModelParams,
    t: float,
    eta=EstimatedParameter.WEIGHT,
    dressed: bool = True,
) -> BlochWithDerivative:
    """Weighted sector average of the central-qubit Bloch vector and its derivative."""
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    eta = EstimatedParameter.parse(eta)
    q = qubit_amplitudes(theta1, phi1)
    dq = central_derivative(theta1, phi1, eta)
    s = np.zeros(3)
    ds = np.zeros(3)
    for sec in sectors(spec):
        u = sector_propagator(params, BathSector(f"m={sec.m:g}", params.delta + sec.detuning_shift), t, dressed)
        a, da = u @ q, u @ dq
        r = a[0] * np.conj(a[1])
        dr = da[0] * np.conj(a[1]) + a[0] * np.conj(da[1])
        s += sec.weight * np.array([2 * r.real, -2 * r.imag, abs(a[0]) ** 2 - abs(a[1]) ** 2])
        ds += sec.weight * np.array(
            [2 * dr.real, -2 * dr.imag, 2 * (np.conj(a[0]) * da[0] - np.conj(a[1]) * da[1]).real]
        )
    return BlochWithDerivative(QubitBloch.from_vector(s), ds)


def qfi_bath(
    theta1: float,
    phi1: float,
    eta,
    spec: BathSpec,
    params: ModelParams,
    t: float,
    dressed: bool = True,
) -> float:
    s, ds = reduced_bloch_bath(theta1, phi1, spec, params, t, eta, dressed)
    return qfi_from_bloch(s, ds)
