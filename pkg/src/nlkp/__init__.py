"""Exact solutions of the nonlinear Kronig-Penney lattice in a static field."""

__version__ = "0.1.0"

from ._accel import backend_name
from .boundary import (
    EPS_MATCH,
    BoundaryData,
    CaseResult,
    MatchResult,
    conductance_landauer,
    match_left,
    phase_b,
    scan_right,
    solve_case,
    transmission_coefficient,
)
from .kpcore import (
    BlowUpError,
    CoefficientPair,
    ModelParams,
    Propagation,
    density_profile,
    lattice_step,
    propagate,
    recoil_energy,
    wavefunction_at,
    wavefunction_grid,
)
from .oracle import IntegrationConfig, compare_exact_oracle, integrate_direct, invariant_checks
from .scan import energy_length_spectrum, multivalue_detect, t_length_spectrum
from .specfun import AccuracyError, basis_at, basis_grid, scaled_coords

__all__ = [
    "AccuracyError", "BlowUpError", "BoundaryData", "CaseResult", "CoefficientPair",
    "EPS_MATCH", "IntegrationConfig", "MatchResult", "ModelParams", "Propagation",
    "backend_name", "basis_at", "basis_grid", "compare_exact_oracle", "conductance_landauer",
    "density_profile", "energy_length_spectrum", "integrate_direct", "invariant_checks",
    "lattice_step", "match_left", "multivalue_detect", "phase_b", "propagate",
    "recoil_energy", "scaled_coords", "scan_right", "solve_case", "t_length_spectrum",
    "transmission_coefficient", "wavefunction_at", "wavefunction_grid",
]
