"""Exactly solvable 1D Schroedinger models built from two polynomials.

A model is a coordinate z(x) (fixed by a quadratic Q through
z'^2 = Q(z), or by z' = lambda - z^2) plus a linear prepotential
derivative; level-N eigenfunctions are exp(-W0) times a polynomial in z
whose roots solve small algebraic systems.  The package constructs the
ten classical closed-form models this way, solves the root systems, and
verifies spectra, partner relations and parameter telescoping against an
independent grid Hamiltonian.
"""

from .bethe import (
    BaeSolution,
    SeedStrategy,
    bae_jacobian,
    bae_residual,
    continuation_sweep,
    first_level_root,
    solve_bae,
)
from .coords import (
    CanonicalForm,
    ConstQ,
    CoordinateGrid,
    Interval,
    LinearQ,
    NonSinusoidalForm,
    QuadQ,
    QuadraticQ,
    classify,
    coordinate_closed_form,
    coordinate_ode_check,
    make_quad_q,
)
from .errors import (
    CoincidentRoots,
    ConfigError,
    ConvergenceFailure,
    DomainViolation,
    GridTooCoarse,
    IntegrationDiverged,
    InvalidModel,
    InvalidRoots,
    LevelOutOfRange,
    NoConvergence,
    ParameterWindowExceeded,
    Solvable1dError,
    UnviableCoordinate,
)
from .prepotential import (
    Eigenpair,
    ModelSpec,
    NonSinusoidalModel,
    SinusoidalModel,
    eigenfunction,
    energy,
    nonsinusoidal_model,
    pole_cancellation_check,
    potential_v0,
    sinusoidal_model,
    w0,
    w0_prime,
    w0_second,
)
from .presets import PRESETS, Preset, get_preset, model_from_mapping
from .serialize import canonical_json, csv_text, fmt_float
from .susy import (
    ExactRational,
    SiMap,
    apply_lowering,
    exact_si_identities_nonsinusoidal,
    exact_si_identities_sinusoidal,
    exact_si_map_nonsinusoidal,
    exact_si_map_sinusoidal,
    ground_potential,
    partner_potential,
    si_parameter_map,
    si_residual_numeric,
    spectrum_via_si,
)
from .verify import (
    GridSpec,
    VerificationReport,
    annihilation_ratio,
    count_nodes,
    fd_spectrum,
    fd_spectrum_potential,
    full_report,
    ground_support_grid,
    wavefunction_residual,
)

__version__ = "0.1.0"

__all__ = [
    "BaeSolution",
    "CanonicalForm",
    "CoincidentRoots",
    "ConfigError",
    "ConstQ",
    "ConvergenceFailure",
    "CoordinateGrid",
    "DomainViolation",
    "Eigenpair",
    "ExactRational",
    "GridSpec",
    "GridTooCoarse",
    "IntegrationDiverged",
    "Interval",
    "InvalidModel",
    "InvalidRoots",
    "LevelOutOfRange",
    "LinearQ",
    "ModelSpec",
    "NoConvergence",
    "NonSinusoidalForm",
    "NonSinusoidalModel",
    "PRESETS",
    "ParameterWindowExceeded",
    "Preset",
    "QuadQ",
    "QuadraticQ",
    "SeedStrategy",
    "SiMap",
    "SinusoidalModel",
    "Solvable1dError",
    "UnviableCoordinate",
    "VerificationReport",
    "annihilation_ratio",
    "apply_lowering",
    "bae_jacobian",
    "bae_residual",
    "canonical_json",
    "classify",
    "continuation_sweep",
    "coordinate_closed_form",
    "coordinate_ode_check",
    "count_nodes",
    "csv_text",
    "eigenfunction",
    "energy",
    "exact_si_identities_nonsinusoidal",
    "exact_si_identities_sinusoidal",
    "exact_si_map_nonsinusoidal",
    "exact_si_map_sinusoidal",
    "fd_spectrum",
    "fd_spectrum_potential",
    "first_level_root",
    "fmt_float",
    "full_report",
    "get_preset",
    "ground_potential",
    "ground_support_grid",
    "make_quad_q",
    "model_from_mapping",
    "nonsinusoidal_model",
    "partner_potential",
    "pole_cancellation_check",
    "potential_v0",
    "sinusoidal_model",
    "si_parameter_map",
    "si_residual_numeric",
    "solve_bae",
    "spectrum_via_si",
    "w0",
    "w0_prime",
    "w0_second",
    "wavefunction_residual",
]
