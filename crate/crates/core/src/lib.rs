//! Rényi entropies, entropy powers and sharp isoperimetric constants along
//! the nonlinear diffusion ∂v/∂t = κ·Δv^p.
//!
//! The crate evaluates the information functionals R_p, N_p, I_p and the
//! dilation invariant Λ_p on radial densities in dimension n, evolves
//! densities under porous-medium / fast-diffusion / heat flow with a
//! conservative finite-volume scheme, and checks the identities and
//! inequalities that connect the two — entropy-power concavity, the
//! isoperimetric inequality N_p·I_p ≥ γ_{n,p}, monotone Λ_p, convergence to
//! the Barenblatt profile, and the Sobolev endpoint — emitting a machine-
//! readable certificate for every check.
//!
//! Everything is radial: densities live on a uniform midpoint grid in r with
//! the surface measure ω_n·r^{n-1}·dr, so n enters only through quadrature
//! weights and the λ, μ exponents.

pub mod constants;
pub mod density;
pub mod error;
pub mod functionals;
pub mod grid;
pub mod profiles;
pub mod report;
pub mod scenario;
pub mod solver;
pub mod special;
pub mod verify;

pub use constants::{gamma_constant, gamma_constant_printed, sobolev_constant};
pub use density::DensityField;
pub use error::{Error, Result};
pub use functionals::{
    entropy_power, fisher_information, lambda_invariant, renyi_entropy, tsallis_entropy,
    FunctionalReport, DELTA_LIMIT, EPS_POS,
};
pub use grid::RadialGrid;
pub use profiles::{
    barenblatt_profile, gaussian_profile, self_similar_snapshot, two_shell_profile,
    uniform_ball_profile, BarenblattSpec, Shell,
};
pub use report::{constants_rows, run_constants_table, ConstantsRow};
pub use scenario::{
    expand_sweep, resolve_scenario, run_scenario, run_sweep, CheckId, ConfigMap, ProfileKind,
    RunMode, ScenarioConfig, ScenarioOutcome,
};
pub use solver::{evolve, Snapshot, SolverConfig, Trajectory};
pub use verify::{
    check_barenblatt_attraction, check_concavity, check_debruijn, check_isoperimetric,
    check_lambda_monotone, check_moment_law, check_power_linearity, check_sobolev, Certificate,
    CheckParams, GridParams,
};
