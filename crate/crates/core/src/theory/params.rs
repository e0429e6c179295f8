use crate::error::{Error, Result};
use crate::geometry::ball_volume;

/// Largest admissible connection radius (exclusive).
pub const MAX_RADIUS: f64 = 0.25;

/// Expected vertex count `n`, dimension `d`, and the radius/mean-degree pair
/// tied together by `μ = n φ_d r^d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    n: f64,
    dim: usize,
    radius: f64,
    mu: f64,
}

impl ModelParams {
    pub fn from_radius(n: f64, dim: usize, radius: f64) -> Result<Self> {
        let mu = mu_from_radius(n, dim, radius)?;
        Ok(ModelParams { n, dim, radius, mu })
    }

    pub fn from_mu(n: f64, dim: usize, mu: f64) -> Result<Self> {
        let radius = radius_from_mu(n, dim, mu)?;
        Ok(ModelParams { n, dim, radius, mu })
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `μ / log n`.
    pub fn alpha(&self) -> f64 {
        self.mu / self.n.ln()
    }
}

fn check_common(n: f64, dim: usize) -> Result<()> {
    if !(n > 0.0) || !n.is_finite() {
        return Err(Error::domain(format!("expected vertex count must be positive, got {n}")));
    }
    if dim == 0 {
        return Err(Error::usage("dimension must be at least 1"));
    }
    Ok(())
}

/// `μ = n φ_d r^d`.
pub fn mu_from_radius(n: f64, dim: usize, radius: f64) -> Result<f64> {
    check_common(n, dim)?;
    if !(radius >= 0.0) {
        return Err(Error::domain(format!("radius must be non-negative, got {radius}")));
    }
    if radius >= MAX_RADIUS {
        return Err(Error::domain(format!("radius {radius} must be below 1/4")));
    }
    Ok(n * ball_volume(dim) * radius.powi(dim as i32))
}

/// `r = (μ / (n φ_d))^{1/d}`.
pub fn radius_from_mu(n: f64, dim: usize, mu: f64) -> Result<f64> {
    check_common(n, dim)?;
    if !(mu >= 0.0) || !mu.is_finite() {
        return Err(Error::domain(format!("mean degree must be non-negative, got {mu}")));
    }
    let radius = (mu / (n * ball_volume(dim))).powf(1.0 / dim as f64);
    if radius >= MAX_RADIUS {
        return Err(Error::domain(format!(
            "mean degree {mu} needs radius {radius}, which is not below 1/4"
        )));
    }
    Ok(radius)
}
