//! Real branches of the Lambert W function.
//!
//! Both branches start from a series or asymptotic guess and polish it with
//! Halley's method. Callers that know the branch offset `q = 1 + e·z` exactly
//! (the inverse entropy does: `q = y`) use the `*_with_offset` entry points,
//! which keep full precision next to the branch point `z = -1/e`.

use std::f64::consts::E;

use crate::error::{Error, Result};

/// Offsets below this are treated as the branch point itself.
const BRANCH_POINT_SLACK: f64 = 4.0 * f64::EPSILON;
const MAX_ITER: usize = 64;

/// Principal branch `W_0`, defined on `[-1/e, ∞)` with values `>= -1`.
pub fn lambert_w0(z: f64) -> Result<f64> {
    let q = branch_offset(z)?;
    Ok(w0_with_offset(z, q))
}

/// Lower branch `W_{-1}`, defined on `[-1/e, 0)` with values `<= -1`.
pub fn lambert_wm1(z: f64) -> Result<f64> {
    if z >= 0.0 {
        return Err(Error::domain(format!("W_-1 is undefined at {z}; need z in [-1/e, 0)")));
    }
    let q = branch_offset(z)?;
    Ok(wm1_with_offset(z, q))
}

fn branch_offset(z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::domain(format!("Lambert W argument {z} is not finite")));
    }
    let q = E.mul_add(z, 1.0);
    if q < -BRANCH_POINT_SLACK {
        return Err(Error::domain(format!("Lambert W argument {z} is below -1/e")));
    }
    Ok(q.max(0.0))
}

/// `W_0(z)` where `q = 1 + e·z >= 0` is supplied by the caller.
pub(crate) fn w0_with_offset(z: f64, q: f64) -> f64 {
    if q <= BRANCH_POINT_SLACK {
        return -1.0;
    }
    if z == 0.0 {
        return 0.0;
    }
    let guess = if q < 0.5 {
        branch_series((2.0 * q).sqrt())
    } else if z < 3.0 {
        // Winitzki's approximation
        let l = z.ln_1p();
        l * (1.0 - (1.0 + l).ln() / (2.0 + l))
    } else {
        let l1 = z.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };
    halley(z, guess, |w| w.max(-1.0))
}

/// `W_{-1}(z)` where `q = 1 + e·z >= 0` is supplied by the caller.
pub(crate) fn wm1_with_offset(z: f64, q: f64) -> f64 {
    if q <= BRANCH_POINT_SLACK {
        return -1.0;
    }
    let guess = if q < 0.5 {
        branch_series(-(2.0 * q).sqrt())
    } else {
        let l1 = (-z).ln();
        let l2 = (-l1).ln();
        l1 - l2 + l2 / l1
    };
    halley(z, guess, |w| w.min(-1.0))
}

/// Expansion of W around the branch point in `p = ±√(2(1 + e z))`.
fn branch_series(p: f64) -> f64 {
    -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))))
}

fn halley(z: f64, mut w: f64, clamp: impl Fn(f64) -> f64) -> f64 {
    for _ in 0..MAX_ITER {
        let ew = w.exp();
        let f = w * ew - z;
        let wp1 = w + 1.0;
        if wp1 == 0.0 {
            break;
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if denom == 0.0 || !denom.is_finite() {
            break;
        }
        let next = clamp(w - f / denom);
        let done = (next - w).abs() <= 2.0 * f64::EPSILON * next.abs().max(1e-300);
        w = next;
        if done {
            break;
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const INV_E: f64 = 1.0 / E;

    fn residual(w: f64, z: f64) -> f64 {
        (w * w.exp() - z).abs()
    }

    /// Newton iteration from scratch on `w e^w - y`, independent of the
    /// guesses and Halley steps above.
    fn newton_oracle(y: f64, mut w: f64) -> f64 {
        for _ in 0..200 {
            w -= (w * w.exp() - y) / (w.exp() * (w + 1.0));
        }
        w
    }

    #[test]
    fn fixed_values() {
        assert_eq!(lambert_w0(0.0).unwrap(), 0.0);
        assert_eq!(lambert_w0(-INV_E).unwrap(), -1.0);
        assert_eq!(lambert_wm1(-INV_E).unwrap(), -1.0);
        let omega = newton_oracle(1.0, 0.5);
        assert!((omega - 0.567_143_290_409_783_8).abs() < 1e-15);
        assert!((lambert_w0(1.0).unwrap() - omega).abs() < 1e-15);
        assert!((lambert_w0(E).unwrap() - 1.0).abs() < 1e-15);
        assert!((lambert_wm1(-2.0 * (-2.0f64).exp()).unwrap() + 2.0).abs() < 1e-13);
    }

    #[test]
    fn domain_errors() {
        assert_eq!(lambert_w0(-0.5).unwrap_err().code(), "domain");
        assert_eq!(lambert_wm1(-0.5).unwrap_err().code(), "domain");
        assert_eq!(lambert_wm1(0.0).unwrap_err().code(), "domain");
        assert_eq!(lambert_wm1(0.3).unwrap_err().code(), "domain");
        assert!(lambert_w0(f64::NAN).is_err());
    }

    #[test]
    fn residuals_on_log_grids() {
        // W_0 on [-1/e, 1e3]
        let mut zs: Vec<f64> = (0..=400).map(|i| -INV_E + INV_E * (i as f64 / 400.0)).collect();
        zs.extend((-12..=30).map(|i| 10f64.powf(i as f64 / 10.0)));
        for z in zs {
            let w = lambert_w0(z).unwrap();
            assert!(w >= -1.0);
            assert!(residual(w, z) <= 1e-12, "W0({z}) = {w}");
        }
        // W_-1 on [-1/e, 0)
        let mut zs: Vec<f64> = (0..400).map(|i| -INV_E + INV_E * (i as f64 / 400.0)).collect();
        zs.extend((1..=300).map(|i| -10f64.powi(-i)));
        for z in zs {
            let w = lambert_wm1(z).unwrap();
            assert!(w <= -1.0);
            assert!(residual(w, z) <= 1e-12, "W-1({z}) = {w}");
        }
    }

    #[test]
    fn near_branch_point() {
        for k in 1..=15 {
            let dz = 10f64.powi(-k);
            let z = -INV_E + dz;
            let w0 = lambert_w0(z).unwrap();
            let wm1 = lambert_wm1(z).unwrap();
            assert!(w0 >= -1.0 && wm1 <= -1.0);
            assert!(residual(w0, z) <= 1e-12);
            assert!(residual(wm1, z) <= 1e-12);
        }
    }

    proptest! {
        #[test]
        fn w0_inverts(w in -1.0f64..6.0) {
            let z = w * w.exp();
            let back = lambert_w0(z).unwrap();
            prop_assert!(residual(back, z) <= 1e-12 * z.abs().max(1.0));
        }

        #[test]
        fn wm1_inverts(w in -40.0f64..-1.0) {
            let z = w * w.exp();
            let back = lambert_wm1(z).unwrap();
            prop_assert!(residual(back, z) <= 1e-12);
            prop_assert!(back <= -1.0);
        }
    }
}
