"""Parameter bundles reproducing the figure studies.

Each preset fixes the model parameters, the non-swept initial angles, the
estimated parameter and the default swept angle. Where a caption is
ambiguous or self-contradictory the resolution is stored in ``notes`` and
echoed into every CSV header.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .model import ModelParams
from .qfi import EstimatedParameter
from .state import InitialAngles

PI = math.pi
WEIGHT = EstimatedParameter.WEIGHT
PHASE = EstimatedParameter.PHASE

# resonance presets only fix delta = 0; omega = omega0 = 0.1 is used
_RES = 0.1

_NOTE_RES = "omega not stated; omega = omega0 = 0.1 (delta = 0)"
_NOTE_PHI1 = "phi1 not stated; phi1 = pi as in the fig1 study"
_NOTE_BATH_POL = "bath qubit polarized, theta2 = pi"
_NOTE_GLOBAL_PHASE = "theta1 = pi/2 makes phi1 a global phase; F_phi1 vanishes identically"


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    params: ModelParams
    angles: InitialAngles
    eta: EstimatedParameter
    axis: str = "theta1"
    bath_n: int | None = None
    notes: tuple[str, ...] = field(default=())


def _resonant(omega1: float, g: float) -> ModelParams:
    return ModelParams(omega0=_RES, omega=_RES, omega1=omega1, g=g)


def _build() -> dict[str, Preset]:
    out: dict[str, Preset] = {}

    def add(p: Preset):
        out[p.name] = p

    for panels, w1 in (("ab", 0.1), ("cd", 0.5), ("ef", 7.0)):
        for panel in panels:
            add(
                Preset(
                    f"fig1{panel}",
                    f"F_theta1 at resonance, g=0.5, phi1=pi, omega1={w1:g}",
                    _resonant(w1, 0.5),
                    InitialAngles(PI / 4, PI, PI, 0.0),
                    WEIGHT,
                    notes=(_NOTE_RES, _NOTE_BATH_POL),
                )
            )

    for name, w0, w in (("fig2ab", 0.01, 0.09), ("fig2cd", 0.09, 0.01)):
        add(
            Preset(
                name,
                f"F_theta1 off resonance, omega0={w0:g}, omega={w:g}",
                ModelParams(omega0=w0, omega=w, omega1=0.1, g=0.5),
                InitialAngles(PI / 4, PI, PI, 0.0),
                WEIGHT,
                notes=(
                    "caption constant 'omega=0.1' conflicts with per-panel omega; per-panel value used",
                    "omega1 not stated; omega1 = 0.1 adopted",
                    _NOTE_BATH_POL,
                ),
            )
        )

    for name, phi1 in (("fig3ab", PI / 4), ("fig3cd", PI / 2)):
        add(
            Preset(
                name,
                f"F_theta1 at resonance, omega0=omega1=0.1, g=0.5, phi1={phi1:.6g}",
                ModelParams(omega0=0.1, omega=0.1, omega1=0.1, g=0.5),
                InitialAngles(PI / 4, phi1, PI, 0.0),
                WEIGHT,
                notes=(_NOTE_BATH_POL,),
            )
        )

    for name, g in (("fig4ab", 0.3), ("fig4cd", 0.7)):
        add(
            Preset(
                name,
                f"fig1a with g={g:g}",
                _resonant(0.1, g),
                InitialAngles(PI / 4, PI, PI, 0.0),
                WEIGHT,
                notes=(_NOTE_RES, _NOTE_BATH_POL),
            )
        )

    for name, theta2 in (("fig5ab", PI / 2), ("fig5cd", PI / 3), ("fig5ef", PI / 4), ("fig5gh", PI / 6)):
        add(
            Preset(
                name,
                f"F_theta1 for bath qubit theta2={theta2:.6g}, phi2=pi, g=0.1, omega1=0.5",
                _resonant(0.5, 0.1),
                InitialAngles(PI / 4, PI, theta2, PI),
                WEIGHT,
                notes=("detuning not stated; resonance assumed, " + _NOTE_RES, _NOTE_PHI1),
            )
        )

    for name, theta1 in (("fig6a", PI / 2), ("fig6b", PI / 4)):
        notes = (_NOTE_RES, _NOTE_BATH_POL)
        if theta1 == PI / 2:
            notes += (_NOTE_GLOBAL_PHASE,)
        add(
            Preset(
                name,
                f"F_phi1 at resonance, omega1=g=0.5, theta1={theta1:.6g}",
                _resonant(0.5, 0.5),
                InitialAngles(theta1, PI, PI, 0.0),
                PHASE,
                axis="phi1",
                notes=notes,
            )
        )

    for name, w0, w in (("fig7a", 0.09, 0.01), ("fig7b", 0.01, 0.09)):
        add(
            Preset(
                name,
                f"F_phi1 off resonance, omega1=g=0.5, omega0={w0:g}, omega={w:g}",
                ModelParams(omega0=w0, omega=w, omega1=0.5, g=0.5),
                InitialAngles(PI / 2, PI, PI, 0.0),
                PHASE,
                axis="phi1",
                notes=(
                    "caption writes omega1=0.01/0.09 where omega is meant; omega1 = 0.5 kept",
                    "theta1 = pi/2 taken from the accompanying text",
                    _NOTE_BATH_POL,
                    _NOTE_GLOBAL_PHASE,
                ),
            )
        )

    for name, g in (("fig8a", 0.3), ("fig8b", 0.7)):
        add(
            Preset(
                name,
                f"F_phi1 at resonance, omega1=0.5, g={g:g}",
                _resonant(0.5, g),
                InitialAngles(PI / 4, PI, PI, 0.0),
                PHASE,
                notes=(
                    "caption constant 'g=0.5' conflicts with per-panel g; per-panel value used",
                    _NOTE_RES,
                    _NOTE_PHI1,
                    _NOTE_BATH_POL,
                ),
            )
        )

    for name, theta2 in (("fig9ab", PI / 2), ("fig9cd", PI / 4), ("fig9ef", PI / 6)):
        add(
            Preset(
                name,
                f"F_phi1 for bath qubit theta2={theta2:.6g}, theta1=pi/2, phi2=pi",
                _resonant(0.1, 0.5),
                InitialAngles(PI / 2, PI, theta2, PI),
                PHASE,
                axis="phi1",
                notes=(_NOTE_RES, _NOTE_GLOBAL_PHASE),
            )
        )

    for name, n in (("fig10ab", 5), ("fig10cd", 7)):
        add(
            Preset(
                name,
                f"F_theta1 with {n} unpolarized bath spins, omega1=0.5, g=0.1",
                _resonant(0.5, 0.1),
                InitialAngles(PI / 4, PI, 0.0, 0.0),
                WEIGHT,
                bath_n=n,
                notes=(_NOTE_RES, _NOTE_PHI1),
            )
        )
    return out


PRESETS: dict[str, Preset] = _build()


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
