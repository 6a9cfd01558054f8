"""Quantum Fisher information of a driven central qubit coupled to a spin bath."""

__version__ = "0.1.0"

from ._backend import BACKEND  # noqa: E402
from .bath import BathSpec, MagnetizationSector, qfi_bath, reduced_bloch_bath, sectors  # noqa: E402
from .model import (  # noqa: E402
    BathSector,
    ModelParams,
    joint_propagator,
    lab_generator,
    sector_propagator,
)
from .qfi import (  # noqa: E402
    BlochWithDerivative,
    EstimatedParameter,
    UnphysicalStateError,
    derivative_state_exact,
    qfi_exact,
    qfi_finite_difference,
    qfi_from_bloch,
)
from .state import (  # noqa: E402
    InitialAngles,
    QubitBloch,
    bloch_norm,
    evolve,
    prepare_initial,
    purity,
    reduced_bloch,
)

__all__ = [
    "BACKEND",
    "BathSector",
    "BathSpec",
    "BlochWithDerivative",
    "EstimatedParameter",
    "InitialAngles",
    "MagnetizationSector",
    "ModelParams",
    "QubitBloch",
    "UnphysicalStateError",
    "bloch_norm",
    "derivative_state_exact",
    "evolve",
    "joint_propagator",
    "lab_generator",
    "prepare_initial",
    "purity",
    "qfi_bath",
    "qfi_exact",
    "qfi_finite_difference",
    "qfi_from_bloch",
    "reduced_bloch",
    "reduced_bloch_bath",
    "sector_propagator",
    "sectors",
]
