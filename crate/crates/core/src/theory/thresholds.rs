//! Extreme-degree scales `T(n)`, `t(n)` and clique-number asymptotics.
//!
//! All of these are limits in `n`; evaluating them at a finite `n` needs a
//! concrete rule for which regime `α = μ / log n` belongs to. [`RegimeCuts`]
//! holds those rules.

use super::entropy::{inverse_entropy_minus, inverse_entropy_plus};
use super::params::ModelParams;
use crate::error::{Error, Result};

/// Where `α = μ / log n` sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeRegime {
    /// `α = 0`: `μ ≪ log n`.
    Sparse,
    /// `α ∈ (0, ∞)`.
    Connectivity,
    /// `α = ∞`: `μ ≫ log n`.
    Dense,
}

impl DegreeRegime {
    pub fn as_str(&self) -> &'static str {
        match self {
            DegreeRegime::Sparse => "sparse",
            DegreeRegime::Connectivity => "connectivity",
            DegreeRegime::Dense => "dense",
        }
    }
}

/// Finite-`n` stand-ins for the limiting regimes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeCuts {
    /// `α` below this counts as `α = 0`.
    pub sparse_alpha: f64,
    /// `α` at or above this counts as `α = ∞`; `None` means `log n`
    /// (i.e. `μ >= log² n`).
    pub dense_alpha: Option<f64>,
    /// Clique number is `O(1)` when `μ <= n^{-bounded_exponent}`.
    pub bounded_exponent: f64,
}

impl Default for RegimeCuts {
    fn default() -> Self {
        RegimeCuts {
            sparse_alpha: 1e-3,
            dense_alpha: None,
            bounded_exponent: 0.1,
        }
    }
}

impl RegimeCuts {
    pub fn dense_cut(&self, n: f64) -> f64 {
        self.dense_alpha.unwrap_or_else(|| n.ln())
    }

    pub fn regime(&self, alpha: f64, n: f64) -> DegreeRegime {
        if alpha < self.sparse_alpha {
            DegreeRegime::Sparse
        } else if alpha >= self.dense_cut(n) {
            DegreeRegime::Dense
        } else {
            DegreeRegime::Connectivity
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeThresholds {
    pub alpha: f64,
    pub regime: DegreeRegime,
    /// `T(n)`, the maximum-degree scale.
    pub max_degree: f64,
    /// `t(n)`, the minimum-degree scale.
    pub min_degree: f64,
}

fn check_thresholds_domain(params: &ModelParams) -> Result<()> {
    if params.n() <= 1.0 {
        return Err(Error::domain(format!(
            "degree thresholds need n > 1, got {}",
            params.n()
        )));
    }
    if params.mu() <= 0.0 {
        return Err(Error::domain("degree thresholds need a positive mean degree"));
    }
    Ok(())
}

/// `T(n)` and `t(n)` for the given parameters.
///
/// * sparse: `T = log n / log(log n / μ)`, `t = 0`;
/// * connectivity: `T = μ H_+^{-1}(1/α)`, `t = μ H_-^{-1}(1/α)` for `α >= 1`
///   and `0` below;
/// * dense: `T = t = μ`.
pub fn degree_thresholds(params: &ModelParams, cuts: &RegimeCuts) -> Result<DegreeThresholds> {
    check_thresholds_domain(params)?;
    let log_n = params.n().ln();
    let mu = params.mu();
    let alpha = params.alpha();
    let regime = cuts.regime(alpha, params.n());
    let (max_degree, min_degree) = match regime {
        DegreeRegime::Sparse => {
            let ratio = log_n / mu;
            if ratio <= 1.0 {
                return Err(Error::domain(format!(
                    "sparse maximum-degree formula needs μ < log n (μ = {mu}, log n = {log_n})"
                )));
            }
            (log_n / ratio.ln(), 0.0)
        }
        DegreeRegime::Connectivity => {
            let inv = 1.0 / alpha;
            let upper = mu * inverse_entropy_plus(inv)?;
            let lower = if alpha < 1.0 {
                0.0
            } else {
                mu * inverse_entropy_minus(inv)?
            };
            (upper, lower)
        }
        DegreeRegime::Dense => (mu, mu),
    };
    Ok(DegreeThresholds {
        alpha,
        regime,
        max_degree,
        min_degree,
    })
}

/// `T(n)` under the default [`RegimeCuts`].
pub fn max_degree_threshold(params: &ModelParams) -> Result<f64> {
    Ok(degree_thresholds(params, &RegimeCuts::default())?.max_degree)
}

/// `t(n)` under the default [`RegimeCuts`].
pub fn min_degree_threshold(params: &ModelParams) -> Result<f64> {
    Ok(degree_thresholds(params, &RegimeCuts::default())?.min_degree)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliqueNumberBranch {
    /// `μ <= n^{-ε}`: bounded clique number.
    Bounded,
    /// `n^{-ε} ≪ μ ≪ log n`.
    Sparse,
    /// `μ / log n → t ∈ (0, ∞)`.
    Connectivity,
    /// `μ ≫ log n`.
    Dense,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliqueNumberEstimate {
    pub branch: CliqueNumberBranch,
    /// Leading-order clique number; `None` on the bounded branch.
    pub value: Option<f64>,
}

/// Leading-order clique number of the unplanted graph.
///
/// On the connectivity branch this is `μ f(α)` with
/// `f(t) = H_+^{-1}(2^d / t) / 2^d`; on the dense branch `μ / 2^d`.
pub fn clique_number_asymptotic(
    params: &ModelParams,
    cuts: &RegimeCuts,
) -> Result<CliqueNumberEstimate> {
    check_thresholds_domain(params)?;
    let n = params.n();
    let mu = params.mu();
    let two_d = 2f64.powi(params.dim() as i32);
    if mu <= n.powf(-cuts.bounded_exponent) {
        return Ok(CliqueNumberEstimate {
            branch: CliqueNumberBranch::Bounded,
            value: None,
        });
    }
    let alpha = params.alpha();
    let (branch, value) = match cuts.regime(alpha, n) {
        DegreeRegime::Sparse => {
            let log_n = n.ln();
            (CliqueNumberBranch::Sparse, log_n / (log_n / mu).ln())
        }
        DegreeRegime::Connectivity => (
            CliqueNumberBranch::Connectivity,
            mu * inverse_entropy_plus(two_d / alpha)? / two_d,
        ),
        DegreeRegime::Dense => (CliqueNumberBranch::Dense, mu / two_d),
    };
    Ok(CliqueNumberEstimate {
        branch,
        value: Some(value),
    })
}
