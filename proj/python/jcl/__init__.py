"""Transport through a two-level dot coupled to two leads and a photon resonator."""

from ._jcl import (
    Channel,
    ConfigError,
    ConvergenceError,
    Error,
    ModelConfig,
    Side,
    SMatrix,
    SymmetryFlags,
    ThermalState,
    ValidatedConfig,
    classify,
    compute_currents,
    cutoff_policy,
    dot_hamiltonian,
    inf,
    jc_spectrum,
    light_absorbing,
    smatrix,
    validate,
)

__all__ = [
    "Channel",
    "ConfigError",
    "ConvergenceError",
    "Error",
    "ModelConfig",
    "Side",
    "SMatrix",
    "SymmetryFlags",
    "ThermalState",
    "ValidatedConfig",
    "classify",
    "compute_currents",
    "cutoff_policy",
    "dot_hamiltonian",
    "inf",
    "jc_spectrum",
    "light_absorbing",
    "smatrix",
    "validate",
]
