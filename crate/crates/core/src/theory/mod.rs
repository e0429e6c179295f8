//! Closed-form threshold machinery.
//!
//! [`lambert`] and [`entropy`] provide the special functions, [`params`] the
//! `μ = n φ_d r^d` parametrisation, [`thresholds`] the extreme-degree scales
//! and clique-number asymptotics, and [`regime`] the finite-`n` classifier
//! for the VD and CN recovery guarantees.

pub mod entropy;
pub mod lambert;
pub mod params;
pub mod regime;
pub mod thresholds;

pub use entropy::{entropy, inverse_entropy_minus, inverse_entropy_plus};
pub use lambert::{lambert_w0, lambert_wm1};
pub use params::{mu_from_radius, radius_from_mu, ModelParams};
pub use regime::{classify_regime, ClassifierConfig, CnCondition, CnVerdict, RegimeVerdict, VdVerdict};
pub use thresholds::{
    clique_number_asymptotic, degree_thresholds, max_degree_threshold, min_degree_threshold,
    CliqueNumberBranch, CliqueNumberEstimate, DegreeRegime, DegreeThresholds, RegimeCuts,
};
