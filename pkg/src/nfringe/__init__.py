"""Coincidence fringes of a linear chain of two-level emitters.

The package computes N-th order photon-coincidence correlation functions for
an equidistant chain of N excited emitters, generates the detector placements
that collapse the signal to a single cosine with fringe spacing lambda/N
(even N) or lambda/(N+1) (odd N), quantifies how Gaussian detector-phase
noise degrades the fringe contrast, and samples discrete coincidence events
from the fringe density.  Everything is validated against brute-force
oracles; see the test suite.

Phases are in radians throughout, chain geometry is the dimensionless
d/lambda, and the observation angle theta is measured from the normal to the
chain axis.
"""

from __future__ import annotations

from .errors import (
    CapExceededError,
    ConfigError,
    FitError,
    FringeError,
    InsufficientStatisticsError,
)
from .geometry import (
    AtomChain,
    FeasibilityParams,
    atom_positions,
    min_farfield_distance,
    phase_from_angle,
    phase_resolution,
)
from .correlation import (
    NAIVE_CAP,
    RYSER_CAP,
    SPIN_ORACLE_CAP,
    g1_spin_oracle,
    g1_superposition,
    g_n,
    g_n_batch,
    g_n_cosine_sum,
    gamma_naive,
    gamma_ryser,
)
from .detectors import (
    MagicConfig,
    closed_form,
    derive_amplitude,
    fringe_multiplier,
    magic_config,
    magic_config_even,
    magic_config_odd,
    magic_phase_matrix,
    verify_collapse,
)
from .noise import (
    NOISE_SCAN_RANGE,
    NoiseSpec,
    VisibilityEstimate,
    analytic_contrast,
    fit_visibility,
    jittered_scan,
    propagate_sigma,
)
from .sampler import (
    EventBatch,
    default_range,
    estimate_visibility_from_events,
    sample_events,
)
from .grids import ScanGrid
from .scenario import Scenario, load_scenario, parse_scenario, serialize_scenario
from .scans import (
    FeasibilityReport,
    NoiseSweepRow,
    feasibility_report,
    g1scan,
    noise_sweep,
    run_sampler,
    scan1d,
    scan2d,
)

__version__ = "0.1.0"

__all__ = [
    "AtomChain",
    "CapExceededError",
    "ConfigError",
    "EventBatch",
    "FeasibilityParams",
    "FeasibilityReport",
    "FitError",
    "FringeError",
    "InsufficientStatisticsError",
    "MagicConfig",
    "NAIVE_CAP",
    "NOISE_SCAN_RANGE",
    "NoiseSpec",
    "NoiseSweepRow",
    "RYSER_CAP",
    "SPIN_ORACLE_CAP",
    "ScanGrid",
    "Scenario",
    "VisibilityEstimate",
    "analytic_contrast",
    "atom_positions",
    "closed_form",
    "default_range",
    "derive_amplitude",
    "estimate_visibility_from_events",
    "feasibility_report",
    "fit_visibility",
    "fringe_multiplier",
    "g1_spin_oracle",
    "g1_superposition",
    "g1scan",
    "g_n",
    "g_n_batch",
    "g_n_cosine_sum",
    "gamma_naive",
    "gamma_ryser",
    "jittered_scan",
    "load_scenario",
    "magic_config",
    "magic_config_even",
    "magic_config_odd",
    "magic_phase_matrix",
    "min_farfield_distance",
    "noise_sweep",
    "parse_scenario",
    "phase_from_angle",
    "phase_resolution",
    "propagate_sigma",
    "run_sampler",
    "sample_events",
    "scan1d",
    "scan2d",
    "serialize_scenario",
    "verify_collapse",
]
