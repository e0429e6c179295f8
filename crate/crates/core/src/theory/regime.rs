//! Finite-`n` classifier for the VD and CN recovery guarantees.
//!
//! The guarantees are asymptotic. Here every "→ 0" condition becomes
//! "expression < τ" and every `o(·)` becomes an explicit ratio bound, all
//! held in [`ClassifierConfig`]. Verdicts are therefore heuristics at a
//! given `n`, and each [`RegimeVerdict`] says so in its notes.

use statrs::function::gamma::ln_gamma;

use super::params::ModelParams;
use super::thresholds::{degree_thresholds, DegreeRegime, RegimeCuts};
use crate::error::{Error, Result};
use crate::geometry::{blocking_region_fraction, touching_lens_fraction};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifierConfig {
    /// Slack `ε ∈ (0, 1)` in the VD thresholds.
    pub epsilon: f64,
    /// An `o(1)` expression counts as vanished once below `tau`.
    pub tau: f64,
    pub cuts: RegimeCuts,
    /// `x = o(y)` is read as `x / y < sublinear_ratio`.
    pub sublinear_ratio: f64,
    /// Largest clique share `k / n` for which the separated-regions CN
    /// condition may apply.
    pub max_clique_fraction: f64,
    /// `μ / n` above this is rejected as ill-posed.
    pub ill_posed_ratio: f64,
    /// Override for `c_{1,d}` (single blocking region share).
    pub c1: Option<f64>,
    /// Override for `c_{2,d}` (touching lens share).
    pub c2: Option<f64>,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig {
            epsilon: 0.1,
            tau: 0.1,
            cuts: RegimeCuts::default(),
            sublinear_ratio: 0.01,
            max_clique_fraction: 0.9,
            ill_posed_ratio: 0.9,
            c1: None,
            c2: None,
        }
    }
}

impl ClassifierConfig {
    pub fn with_epsilon(epsilon: f64) -> Self {
        ClassifierConfig {
            epsilon,
            ..Default::default()
        }
    }

    pub fn c1_for(&self, dim: usize) -> Result<f64> {
        match self.c1 {
            Some(c) => Ok(c),
            None => blocking_region_fraction(dim),
        }
    }

    pub fn c2_for(&self, dim: usize) -> Result<f64> {
        match self.c2 {
            Some(c) => Ok(c),
            None => touching_lens_fraction(dim),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VdVerdict {
    Success,
    Fail,
    Unknown,
}

impl VdVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            VdVerdict::Success => "SUCCESS",
            VdVerdict::Fail => "FAIL",
            VdVerdict::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CnVerdict {
    Success,
    Unknown,
}

impl CnVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            CnVerdict::Success => "SUCCESS",
            CnVerdict::Unknown => "UNKNOWN",
        }
    }
}

/// Which CN sufficient condition decided the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CnCondition {
    /// `μ n e^{-c₁ μ} < τ` with `k <= 0.9 n`: natural edges almost surely
    /// have common neighbours in both blocking regions.
    SeparatedRegions,
    /// `k - 2 <= c₂ μ` and `(μ n / 2) Poi(c₂ μ)(k - 2) < τ`.
    FewCommonNeighbors,
    /// `k - 2 >= μ`, `k = o(n / μ)` and `(n / 2) μ^{k-1} e^{-μ} / (k-2)! < τ`.
    ManyCommonNeighbors,
    /// `c₂ μ < k - 2 < μ`: no bound available.
    Gap,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeVerdict {
    pub vd: VdVerdict,
    pub cn: CnVerdict,
    pub alpha: f64,
    pub regime: DegreeRegime,
    /// `T(n)`.
    pub max_degree: f64,
    /// `t(n)`.
    pub min_degree: f64,
    /// The condition that fired for a CN success, or [`CnCondition::Gap`]
    /// when `k` sat in the unbounded band and nothing else applied.
    pub cn_condition: Option<CnCondition>,
    /// `ln(μ n e^{-c₁ μ})`.
    pub separated_log_bound: f64,
    /// Natural log of the matching second-display expression, when one applies.
    pub common_neighbor_log_bound: Option<f64>,
    pub notes: String,
}

/// Classifies `(n, d, μ, k)` against the VD positive/negative results and
/// the CN positive result.
pub fn classify_regime(
    params: &ModelParams,
    k: usize,
    config: &ClassifierConfig,
) -> Result<RegimeVerdict> {
    if k < 2 {
        return Err(Error::usage(format!("planted clique size must be at least 2, got {k}")));
    }
    let eps = config.epsilon;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::usage(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    let n = params.n();
    let mu = params.mu();
    if mu / n > config.ill_posed_ratio {
        return Err(Error::domain(format!(
            "ill-posed parameters: μ/n = {} exceeds {}",
            mu / n,
            config.ill_posed_ratio
        )));
    }
    let th = degree_thresholds(params, &config.cuts)?;
    let kf = k as f64;

    let mut notes = vec!["asymptotic guarantees evaluated at finite n (heuristic)".to_string()];

    let vd = match th.regime {
        DegreeRegime::Sparse | DegreeRegime::Connectivity => {
            if kf > (1.0 + eps) * (th.max_degree - th.min_degree) {
                VdVerdict::Success
            } else if th.regime == DegreeRegime::Connectivity
                && kf <= (1.0 - eps) * (th.max_degree - mu)
            {
                VdVerdict::Fail
            } else {
                VdVerdict::Unknown
            }
        }
        DegreeRegime::Dense => {
            if kf > eps * mu {
                VdVerdict::Success
            } else if mu / n < config.sublinear_ratio && kf < eps * mu.sqrt() {
                VdVerdict::Fail
            } else {
                VdVerdict::Unknown
            }
        }
    };

    let c1 = config.c1_for(params.dim())?;
    let c2 = config.c2_for(params.dim())?;
    let log_tau = config.tau.ln();
    let separated_log_bound = mu.ln() + n.ln() - c1 * mu;
    let separated = kf <= config.max_clique_fraction * n && separated_log_bound < log_tau;

    let km2 = kf - 2.0;
    let ln_fact = ln_gamma(km2 + 1.0);
    let (second_condition, common_neighbor_log_bound) = if km2 <= c2 * mu {
        let c2mu = c2 * mu;
        let power = if km2 == 0.0 { 0.0 } else { km2 * c2mu.ln() };
        let bound = (mu * n / 2.0).ln() + power - c2mu - ln_fact;
        (Some(CnCondition::FewCommonNeighbors).filter(|_| bound < log_tau), Some(bound))
    } else if km2 >= mu {
        let bound = (n / 2.0).ln() + (kf - 1.0) * mu.ln() - mu - ln_fact;
        let small_clique = kf * mu / n < config.sublinear_ratio;
        (
            Some(CnCondition::ManyCommonNeighbors).filter(|_| small_clique && bound < log_tau),
            Some(bound),
        )
    } else {
        (None, None)
    };

    let in_gap = km2 > c2 * mu && km2 < mu;
    let cn_condition = if separated {
        Some(CnCondition::SeparatedRegions)
    } else if second_condition.is_some() {
        second_condition
    } else if in_gap {
        Some(CnCondition::Gap)
    } else {
        None
    };
    let cn = match cn_condition {
        Some(CnCondition::Gap) | None => CnVerdict::Unknown,
        Some(_) => CnVerdict::Success,
    };
    if in_gap {
        notes.push(format!(
            "k - 2 lies in the common-neighbour gap ({:.4}, {:.4})",
            c2 * mu,
            mu
        ));
    }
    notes.push(format!("c1 = {c1:.6}, c2 = {c2:.6}, tau = {}", config.tau));

    Ok(RegimeVerdict {
        vd,
        cn,
        alpha: th.alpha,
        regime: th.regime,
        max_degree: th.max_degree,
        min_degree: th.min_degree,
        cn_condition,
        separated_log_bound,
        common_neighbor_log_bound,
        notes: notes.join("; "),
    })
}
