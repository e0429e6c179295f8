//! `H(x) = 1 - x + x log x` and its two inverse branches.

use std::f64::consts::E;

use super::lambert::{w0_with_offset, wm1_with_offset};
use crate::error::{Error, Result};

/// Relative entropy `H(x) = 1 - x + x log x` for `x >= 0` (with `H(0) = 1`).
pub fn entropy(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        1.0 - x + x * x.ln()
    }
}

/// Inverse of `H` on `[1, ∞)`: `exp(W_0((y - 1)/e) + 1)`.
///
/// `H_+^{-1}(0) = 1`.
pub fn inverse_entropy_plus(y: f64) -> Result<f64> {
    if !(y >= 0.0) || y.is_infinite() {
        return Err(Error::domain(format!(
            "inverse entropy (upper branch) needs y >= 0, got {y}"
        )));
    }
    if y == 0.0 {
        return Ok(1.0);
    }
    Ok((w0_with_offset((y - 1.0) / E, y) + 1.0).exp())
}

/// Inverse of `H` on `[0, 1]`: `exp(W_{-1}((y - 1)/e) + 1)`.
///
/// `H_-^{-1}(0) = 1`, and `H_-^{-1}(1) = 0` as the limit of the lower branch.
pub fn inverse_entropy_minus(y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::domain(format!(
            "inverse entropy (lower branch) needs y in [0, 1], got {y}"
        )));
    }
    if y == 0.0 {
        return Ok(1.0);
    }
    if y == 1.0 {
        return Ok(0.0);
    }
    Ok((wm1_with_offset((y - 1.0) / E, y) + 1.0).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Bisection on the monotone pieces of H.
    pub(crate) fn bisect(y: f64, mut lo: f64, mut hi: f64, increasing: bool) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (entropy(mid) < y) == increasing {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn log_grid(lo_exp: f64, hi_exp: f64, steps: usize) -> Vec<f64> {
        (0..=steps)
            .map(|i| 10f64.powf(lo_exp + (hi_exp - lo_exp) * i as f64 / steps as f64))
            .collect()
    }

    #[test]
    fn conventions_at_zero() {
        assert_eq!(inverse_entropy_plus(0.0).unwrap(), 1.0);
        assert_eq!(inverse_entropy_minus(0.0).unwrap(), 1.0);
        assert_eq!(inverse_entropy_minus(1.0).unwrap(), 0.0);
    }

    #[test]
    fn upper_branch_at_one_is_e() {
        assert!((inverse_entropy_plus(1.0).unwrap() - E).abs() < 1e-10);
    }

    #[test]
    fn anchor_for_mu_one() {
        // bisection oracle: H_+^{-1}(9.21) = 7.7937...
        let oracle = bisect(9.21, 1.0, 100.0, true);
        assert!((oracle - 7.7937).abs() < 1e-3);
        assert!((inverse_entropy_plus(9.21).unwrap() - oracle).abs() < 1e-10);
    }

    #[test]
    fn domain_errors() {
        assert_eq!(inverse_entropy_plus(-1e-9).unwrap_err().code(), "domain");
        assert_eq!(inverse_entropy_minus(-1e-9).unwrap_err().code(), "domain");
        assert_eq!(inverse_entropy_minus(1.5).unwrap_err().code(), "domain");
    }

    #[test]
    fn round_trips() {
        for y in log_grid(-6.0, 3.0, 400) {
            let x = inverse_entropy_plus(y).unwrap();
            assert!(x >= 1.0);
            assert!((entropy(x) - y).abs() <= 1e-10, "plus y={y}");
        }
        for y in log_grid(-6.0, 0.0, 300) {
            let x = inverse_entropy_minus(y).unwrap();
            assert!((0.0..=1.0).contains(&x));
            assert!((entropy(x) - y).abs() <= 1e-10, "minus y={y}");
        }
    }

    #[test]
    fn agrees_with_bisection() {
        for y in log_grid(-4.0, 2.5, 40) {
            let oracle = bisect(y, 1.0, 1e4, true);
            assert!((inverse_entropy_plus(y).unwrap() - oracle).abs() < 1e-8 * oracle);
        }
        for y in log_grid(-4.0, -0.01, 40) {
            let oracle = bisect(y, 0.0, 1.0, false);
            assert!((inverse_entropy_minus(y).unwrap() - oracle).abs() < 1e-8);
        }
    }
}
