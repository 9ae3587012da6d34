"""Harmonic generation in a 1D hard-wall box, driven or with a breathing wall."""

__version__ = "0.1.0"

from .basis import BasisTables, BoxSpec, build_tables, eigen_energy
from .errors import (
    ConfigurationError,
    DataError,
    InstabilityError,
    UndefinedSlopeError,
)
from .integrator import (
    DiagCouplingRHS,
    PropagationGrid,
    PropagationResult,
    StateVector,
    norm,
    propagate,
)
from .moving_wall import (
    MultichromaticCoefficients,
    WallMotion,
    effective_coupling,
    multichromatic_expansion,
    run_moving,
    tau_of_t,
    wall_position,
)
from .spectrum import DipoleSeries, Spectrum, envelope_slope, harmonic_spectrum
from .static_drive import DriveParams, run_static

__all__ = [
    "BasisTables",
    "BoxSpec",
    "ConfigurationError",
    "DataError",
    "DiagCouplingRHS",
    "DipoleSeries",
    "DriveParams",
    "InstabilityError",
    "MultichromaticCoefficients",
    "PropagationGrid",
    "PropagationResult",
    "Spectrum",
    "StateVector",
    "UndefinedSlopeError",
    "WallMotion",
    "build_tables",
    "effective_coupling",
    "eigen_energy",
    "envelope_slope",
    "harmonic_spectrum",
    "multichromatic_expansion",
    "norm",
    "propagate",
    "run_moving",
    "run_static",
    "tau_of_t",
    "wall_position",
]
