"""Quantum Fisher information of the reduced central qubit in Bloch form.

For a qubit with Bloch vector s(eta),

    F = |ds|^2 + (s . ds)^2 / (1 - |s|^2)   if |s| < 1,
    F = |ds|^2                              if |s| = 1,

where ds = d s / d eta. The exact path obtains ds by propagating the
derivative of the initial state through the same (eta independent)
propagator; the finite-difference path is an independent cross-check.
"""

from __future__ import annotations

import enum
import math
from typing import NamedTuple

import numpy as np

from .model import ModelParams, joint_propagator
from .state import InitialAngles, QubitBloch, prepare_initial, reduced_bloch

PURE_TOLERANCE = 1e-9
UNPHYSICAL_TOLERANCE = 1e-9

_Z_SIGNS = np.array([1.0, 1.0, -1.0, -1.0])


class UnphysicalStateError(ValueError):
    """A Bloch vector longer than one reached the QFI formula."""


class EstimatedParameter(enum.Enum):
    WEIGHT = "theta1"
    PHASE = "phi1"

    @classmethod
    def parse(cls, value) -> "EstimatedParameter":
        if isinstance(value, cls):
            return value
        aliases = {"theta1": cls.WEIGHT, "weight": cls.WEIGHT, "phi1": cls.PHASE, "phase": cls.PHASE}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValueError(f"unknown estimated parameter {value!r}; use theta1 or phi1") from None


class BlochWithDerivative(NamedTuple):
    s: QubitBloch
    ds: np.ndarray


def _vec(s) -> np.ndarray:
    if isinstance(s, QubitBloch):
        return s.vector
    return np.asarray(s, dtype=float)


def qfi_from_bloch(s, ds, printed: bool = False) -> float:
    """QFI of a qubit from its Bloch vector and the vector's parameter derivative.

    ``printed=True`` evaluates the variant without the square on s . ds,
    kept only for side-by-side reports; it is not a Fisher information.
    """
    s, ds = _vec(s), _vec(ds)
    n2 = float(s @ s)
    n = math.sqrt(n2)
    if n > 1 + UNPHYSICAL_TOLERANCE:
        raise UnphysicalStateError(f"Bloch vector norm {n!r} exceeds 1")
    grad2 = float(ds @ ds)
    if n >= 1 - PURE_TOLERANCE:
        return grad2
    proj = float(s @ ds)
    if printed:
        return grad2 + proj / (1 - n2)
    return grad2 + proj * proj / (1 - n2)


def qfi_from_bloch_array(s, ds) -> np.ndarray:
    """Vectorised ``qfi_from_bloch`` over the leading axes of (..., 3) arrays."""
    s = np.asarray(s, dtype=float)
    ds = np.asarray(ds, dtype=float)
    n2 = np.einsum("...i,...i->...", s, s)
    n = np.sqrt(n2)
    if np.any(n > 1 + UNPHYSICAL_TOLERANCE):
        raise UnphysicalStateError(f"Bloch vector norm {float(n.max())!r} exceeds 1")
    grad2 = np.einsum("...i,...i->...", ds, ds)
    proj = np.einsum("...i,...i->...", s, ds)
    mixed = n < 1 - PURE_TOLERANCE
    denom = np.where(mixed, 1 - n2, 1.0)
    return np.where(mixed, grad2 + proj * proj / denom, grad2)


def central_derivative(theta: float, phi: float, eta: EstimatedParameter) -> np.ndarray:
    """d/d eta of the central-qubit amplitudes (cos theta, sin theta e^{-i phi})."""
    phase = np.exp(-1j * phi)
    if eta is EstimatedParameter.WEIGHT:
        return np.array([-math.sin(theta), math.cos(theta) * phase])
    return np.array([0.0, -1j * math.sin(theta) * phase])


def initial_derivative(angles: InitialAngles, eta) -> np.ndarray:
    eta = EstimatedParameter.parse(eta)
    bath = np.array([math.cos(angles.theta2), math.sin(angles.theta2) * np.exp(-1j * angles.phi2)])
    return np.kron(central_derivative(angles.theta1, angles.phi1, eta), bath)


def derivative_state_exact(
    angles: InitialAngles, eta, params: ModelParams, t: float, dressed: bool = True
) -> tuple[np.ndarray, np.ndarray]:
    """Evolved joint state and its exact eta-derivative (not normalised)."""
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    u = joint_propagator(params, t, dressed)
    return u @ prepare_initial(angles), u @ initial_derivative(angles, eta)


def bloch_with_derivative(psi, dpsi) -> BlochWithDerivative:
    """Reduced Bloch vector of ``psi`` and its derivative along ``dpsi``."""
    psi = np.asarray(psi)
    dpsi = np.asarray(dpsi)
    dr = coherence_derivative(psi, dpsi)
    dz = 2 * float(np.sum(_Z_SIGNS * (np.conj(psi) * dpsi).real))
    return BlochWithDerivative(reduced_bloch(psi), np.array([2 * dr.real, -2 * dr.imag, dz]))


def coherence_derivative(psi, dpsi) -> complex:
    return coherence_pair(dpsi, psi) + coherence_pair(psi, dpsi)


def coherence_pair(a, b) -> complex:
    return a[0] * np.conj(b[2]) + a[1] * np.conj(b[3])


def qfi_exact(
    angles: InitialAngles,
    eta,
    params: ModelParams,
    t: float,
    dressed: bool = True,
    printed: bool = False,
) -> float:
    psi, dpsi = derivative_state_exact(angles, eta, params, t, dressed)
    s, ds = bloch_with_derivative(psi, dpsi)
    return qfi_from_bloch(s, ds, printed=printed)


def _bloch_at(angles: InitialAngles, eta: EstimatedParameter, value: float, params, t, dressed):
    shifted = angles.replace(**{eta.value: value})
    u = joint_propagator(params, t, dressed)
    return reduced_bloch(u @ prepare_initial(shifted)).vector


def finite_difference_derivative(
    angles: InitialAngles,
    eta,
    params: ModelParams,
    t: float,
    h: float = 1e-4,
    richardson: bool = True,
    dressed: bool = True,
) -> np.ndarray:
    """Central-difference ds/d eta, optionally with one Richardson step (h, h/2)."""
    if not h > 0:
        raise ValueError(f"finite-difference step must be positive, got {h}")
    eta = EstimatedParameter.parse(eta)
    # unwrapped base value; InitialAngles re-wraps the shifted copies
    x0 = getattr(angles, eta.value)

    def central(step):
        plus = _bloch_at(angles, eta, x0 + step, params, t, dressed)
        minus = _bloch_at(angles, eta, x0 - step, params, t, dressed)
        return (plus - minus) / (2 * step)

    d_h = central(h)
    if not richardson:
        return d_h
    return (4 * central(h / 2) - d_h) / 3


def qfi_finite_difference(
    angles: InitialAngles,
    eta,
    params: ModelParams,
    t: float,
    h: float = 1e-4,
    richardson: bool = True,
    dressed: bool = True,
) -> float:
    ds = finite_difference_derivative(angles, eta, params, t, h, richardson, dressed)
    psi = joint_propagator(params, t, dressed) @ prepare_initial(angles)
    return qfi_from_bloch(reduced_bloch(psi), ds)
