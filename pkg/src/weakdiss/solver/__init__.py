"""Spectral solver, per-frequency oracle, energies and operator norms."""

from .energy import (
    GridCoverageWarning,
    WindowLeakageWarning,
    evolve_profile,
    hyperbolic_energy,
    kernel_grid,
    kernel_profile,
    kernel_sup,
    operator_norms,
    smooth_taper,
    sphere_area,
)
from .grid import (
    AliasingWarning,
    FieldState,
    GridSpec,
    RadialProfile,
    SourceTerm,
    forward_transform,
    inverse_transform,
    log_radial_profile,
    spectral_tail,
)
from .oracle import OracleStepLimit, ode_oracle
from .spectral import solve_homogeneous, solve_inhomogeneous
from .transforms import KleinGordonReport, TimeRescale, klein_gordon_check, klein_gordon_mass, time_rescale_map

__all__ = [
    "AliasingWarning",
    "FieldState",
    "GridCoverageWarning",
    "GridSpec",
    "KleinGordonReport",
    "OracleStepLimit",
    "RadialProfile",
    "SourceTerm",
    "TimeRescale",
    "WindowLeakageWarning",
    "evolve_profile",
    "forward_transform",
    "hyperbolic_energy",
    "inverse_transform",
    "kernel_grid",
    "kernel_profile",
    "kernel_sup",
    "klein_gordon_check",
    "klein_gordon_mass",
    "log_radial_profile",
    "ode_oracle",
    "operator_norms",
    "smooth_taper",
    "solve_homogeneous",
    "solve_inhomogeneous",
    "spectral_tail",
    "sphere_area",
    "time_rescale_map",
]
