//! Toroidal metric and the ball/lens volumes used by the threshold theory.
//!
//! All lens and blocking-region quantities are expressed as fractions of the
//! ball volume `φ_d r^d`, which makes them independent of `r`. Balls never
//! wrap around the torus because the model requires `r < 1/4`, so the usual
//! Euclidean formulas apply.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI};

use crate::error::{Error, Result};

/// A position on the unit `d`-torus, stored by its canonical representative
/// in `[0, 1)^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    /// Rejects empty coordinate lists and coordinates outside `[0, 1)`.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::usage("a point needs at least one coordinate"));
        }
        if let Some(bad) = coords.iter().find(|c| !(0.0..1.0).contains(*c)) {
            return Err(Error::usage(format!(
                "coordinate {bad} is outside [0, 1)"
            )));
        }
        Ok(Point(coords))
    }

    /// Reduces every coordinate modulo 1.
    pub fn wrapped(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::usage("coordinates must be finite"));
        }
        Point::new(coords.into_iter().map(wrap_unit).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }
}

/// Canonical representative of `x` modulo 1.
pub fn wrap_unit(x: f64) -> f64 {
    let w = x.rem_euclid(1.0);
    // rem_euclid rounds tiny negatives up to exactly 1.0
    if w >= 1.0 {
        0.0
    } else {
        w
    }
}

/// Toroidal distance `d_T(x, y)`.
pub fn torus_distance(x: &Point, y: &Point) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::usage(format!(
            "dimension mismatch: {} vs {}",
            x.dim(),
            y.dim()
        )));
    }
    Ok(torus_distance_sq(x.coords(), y.coords()).sqrt())
}

/// Squared toroidal distance between two raw coordinate slices of equal length.
#[inline]
pub fn torus_distance_sq(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let delta = (x - y).abs();
            let wrapped = delta.min(1.0 - delta);
            wrapped * wrapped
        })
        .sum()
}

/// Volume `φ_d = π^{d/2} / Γ(d/2 + 1)` of the unit ball in `d` dimensions.
pub fn unit_ball_volume(d: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::usage("dimension must be at least 1"));
    }
    Ok(ball_volume(d))
}

/// Same as [`unit_ball_volume`] but defined at `d = 0` (value 1), via
/// `φ_d = φ_{d-2} · 2π / d`.
pub(crate) fn ball_volume(d: usize) -> f64 {
    let mut vol = if d % 2 == 0 { 1.0 } else { 2.0 };
    let mut k = if d % 2 == 0 { 2 } else { 3 };
    while k <= d {
        vol *= 2.0 * PI / k as f64;
        k += 2;
    }
    vol
}

/// Two radius-`r` balls whose centres are `center_distance` apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LensSpec {
    center_distance: f64,
    radius: f64,
    dim: usize,
}

impl LensSpec {
    pub fn new(center_distance: f64, radius: f64, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::usage("dimension must be at least 1"));
        }
        if !(radius > 0.0 && radius < 0.25) {
            return Err(Error::domain(format!("radius {radius} is outside (0, 1/4)")));
        }
        if !(center_distance >= 0.0) {
            return Err(Error::usage("centre distance must be non-negative"));
        }
        if center_distance > radius {
            return Err(Error::usage(format!(
                "centre distance {center_distance} exceeds the radius {radius}; the endpoints are not adjacent"
            )));
        }
        Ok(LensSpec {
            center_distance,
            radius,
            dim,
        })
    }

    pub fn center_distance(&self) -> f64 {
        self.center_distance
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `x / r`, in `[0, 1]`.
    pub fn ratio(&self) -> f64 {
        self.center_distance / self.radius
    }
}

/// `A(x, r) / (φ_d r^d)`: the share of one ball covered by the intersection
/// of both.
pub fn lens_volume_fraction(spec: &LensSpec) -> f64 {
    lens_fraction_at_ratio(spec.ratio(), spec.dim())
}

/// Lens fraction as a function of the scale-free ratio `u = x / r ∈ [0, 1]`.
///
/// Closed forms for `d <= 3`; quadrature over the cap profile otherwise.
pub fn lens_fraction_at_ratio(u: f64, d: usize) -> f64 {
    debug_assert!((0.0..=1.0).contains(&u) && d >= 1);
    match d {
        1 => 1.0 - u / 2.0,
        2 => {
            let h = u / 2.0;
            2.0 / PI * (h.acos() - h * (1.0 - h * h).sqrt())
        }
        3 => (4.0 + u) * (2.0 - u) * (2.0 - u) / 16.0,
        _ => lens_fraction_quadrature(u, d),
    }
}

/// The lens is two caps of height `r - x/2`; integrate the `(d-1)`-ball
/// cross-sections of one cap and double.
pub(crate) fn lens_fraction_quadrature(u: f64, d: usize) -> f64 {
    let exponent = (d as f64 - 1.0) / 2.0;
    let cap = integrate(|s| (1.0 - s * s).max(0.0).powf(exponent), u / 2.0, 1.0, 1e-13);
    2.0 * ball_volume(d - 1) / ball_volume(d) * cap
}

/// Lens fraction when the centres sit exactly `r` apart (`c_{2,d}`): the
/// smallest intersection two adjacent vertices can have.
pub fn touching_lens_fraction(d: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::usage("dimension must be at least 1"));
    }
    Ok(lens_fraction_at_ratio(1.0, d))
}

/// Which of the two blocking regions a point falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockingSide {
    Upper,
    Lower,
}

/// Locates `p` (in units of `r`, ball centres at the origin and at `e_1`)
/// relative to the blocking regions `R_1` / `R_2` of the touching lens.
///
/// For `d >= 2` the regions are the lens points whose second coordinate is
/// above `1/2` or below `-1/2`, so any cross pair is more than one radius
/// apart. For `d = 1` the lens is the segment `[0, 1]` and the regions are
/// its outer quarters.
pub fn blocking_side(p: &[f64]) -> Option<BlockingSide> {
    let in_lens = {
        let near_origin: f64 = p.iter().map(|c| c * c).sum();
        let near_e1 = near_origin - 2.0 * p[0] + 1.0;
        near_origin <= 1.0 && near_e1 <= 1.0
    };
    if !in_lens {
        return None;
    }
    let (coord, cut) = if p.len() == 1 {
        (p[0] - 0.5, 0.25)
    } else {
        (p[1], 0.5)
    };
    if coord > cut {
        Some(BlockingSide::Upper)
    } else if coord < -cut {
        Some(BlockingSide::Lower)
    } else {
        None
    }
}

/// Volume of one blocking region as a fraction of `φ_d r^d` (`c_{1,d}`).
///
/// With `(a, b)` the distance to the farther centre along the axis and the
/// second coordinate, the region is `a, b >= 1/2`, `a² + b² <= 1`; the
/// remaining `d - 2` coordinates fill a ball of radius `√(1 - a² - b²)`.
/// Going to polar coordinates in `(a, b)` leaves the single integral
/// `(4 φ_{d-2} / d) ∫_{π/4}^{π/3} (1 - 1/(4 cos² θ))^{d/2} dθ`.
pub fn blocking_region_fraction(d: usize) -> Result<f64> {
    match d {
        0 => Err(Error::usage("dimension must be at least 1")),
        1 => Ok(0.125),
        _ => {
            let half_d = d as f64 / 2.0;
            let integral = integrate(
                |theta| {
                    let c = theta.cos();
                    (1.0 - 1.0 / (4.0 * c * c)).max(0.0).powf(half_d)
                },
                FRAC_PI_4,
                FRAC_PI_3,
                1e-14,
            );
            Ok(4.0 * ball_volume(d - 2) / d as f64 * integral / ball_volume(d))
        }
    }
}

/// Adaptive Simpson quadrature.
pub(crate) fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn step<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(&f, a, b, fa, fm, fb, whole, tol, 48)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::monte_carlo_volume;
    use proptest::prelude::*;

    fn pt(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    #[test]
    fn distance_examples() {
        let d = torus_distance(&pt(&[0.9]), &pt(&[0.1])).unwrap();
        assert!((d - 0.2).abs() < 1e-12);
        assert_eq!(torus_distance(&pt(&[0.3, 0.7]), &pt(&[0.3, 0.7])).unwrap(), 0.0);
        let d = torus_distance(&pt(&[0.0, 0.0]), &pt(&[0.5, 0.5])).unwrap();
        assert!((d - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn distance_dimension_mismatch() {
        let err = torus_distance(&pt(&[0.1]), &pt(&[0.1, 0.2])).unwrap_err();
        assert_eq!(err.code(), "usage");
    }

    #[test]
    fn point_validation() {
        assert!(Point::new(vec![]).is_err());
        assert!(Point::new(vec![1.0]).is_err());
        assert!(Point::new(vec![-0.1]).is_err());
        assert_eq!(Point::wrapped(vec![1.25, -0.25]).unwrap().coords(), &[0.25, 0.75]);
        assert_eq!(wrap_unit(-1e-20), 0.0);
    }

    #[test]
    fn ball_volumes() {
        assert_eq!(unit_ball_volume(1).unwrap(), 2.0);
        assert!((unit_ball_volume(2).unwrap() - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3).unwrap() - 4.0 * PI / 3.0).abs() < 1e-14);
        // π²/2 and 8π²/15
        assert!((unit_ball_volume(4).unwrap() - PI * PI / 2.0).abs() < 1e-13);
        assert!((unit_ball_volume(5).unwrap() - 8.0 * PI * PI / 15.0).abs() < 1e-13);
        assert!(unit_ball_volume(0).is_err());
    }

    #[test]
    fn lens_examples() {
        for d in 1..=6 {
            let spec = LensSpec::new(0.0, 0.1, d).unwrap();
            assert!((lens_volume_fraction(&spec) - 1.0).abs() < 1e-10, "d={d}");
        }
        let touching = LensSpec::new(0.05, 0.05, 2).unwrap();
        let expected = 2.0 / 3.0 - 3f64.sqrt() / (2.0 * PI);
        assert!((lens_volume_fraction(&touching) - expected).abs() < 1e-12);
        assert!((lens_volume_fraction(&touching) - 0.39100).abs() < 1e-5);
        assert_eq!(touching_lens_fraction(1).unwrap(), 0.5);
        assert!((touching_lens_fraction(3).unwrap() - 5.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn lens_rejects_non_adjacent_centres() {
        assert_eq!(LensSpec::new(0.2, 0.1, 2).unwrap_err().code(), "usage");
        assert_eq!(LensSpec::new(0.0, 0.25, 2).unwrap_err().code(), "domain");
    }

    #[test]
    fn quadrature_agrees_with_closed_forms() {
        for d in [2usize, 3] {
            for i in 0..=20 {
                let u = i as f64 / 20.0;
                let closed = lens_fraction_at_ratio(u, d);
                let quad = lens_fraction_quadrature(u, d);
                assert!((closed - quad).abs() < 1e-9, "d={d} u={u}: {closed} vs {quad}");
            }
        }
    }

    #[test]
    fn lens_strictly_decreasing() {
        for d in 1..=6 {
            let mut prev = lens_fraction_at_ratio(0.0, d);
            for i in 1..=50 {
                let cur = lens_fraction_at_ratio(i as f64 / 50.0, d);
                assert!(cur < prev, "d={d} step {i}");
                prev = cur;
            }
        }
    }

    #[test]
    fn lens_matches_monte_carlo() {
        for d in 1..=3 {
            for &u in &[0.3, 1.0] {
                let est = monte_carlo_volume(
                    |p| {
                        let far: f64 =
                            p.iter().enumerate().map(|(i, c)| if i == 0 { (c - u) * (c - u) } else { c * c }).sum();
                        far <= 1.0
                    },
                    d,
                    1_000_000,
                    17 + d as u64,
                )
                .unwrap();
                let exact = lens_fraction_at_ratio(u, d);
                assert!(
                    (est.fraction - exact).abs() <= 3.0 * est.std_error,
                    "d={d} u={u}: {} ± {} vs {exact}",
                    est.fraction,
                    est.std_error
                );
            }
        }
    }

    #[test]
    fn blocking_fraction_closed_form_in_the_plane() {
        // π/6 - (√3 - 1)/2 over π
        let exact = (PI / 6.0 - (3f64.sqrt() - 1.0) / 2.0) / PI;
        assert!((blocking_region_fraction(2).unwrap() - exact).abs() < 1e-12);
        assert!((exact - 0.050157).abs() < 1e-6);
    }

    #[test]
    fn blocking_fraction_is_positive_and_inside_the_lens() {
        for d in 1..=8 {
            let c1 = blocking_region_fraction(d).unwrap();
            let c2 = touching_lens_fraction(d).unwrap();
            assert!(c1 > 0.0 && c1 < c2, "d={d}: c1={c1} c2={c2}");
        }
        assert!(blocking_region_fraction(0).is_err());
    }

    #[test]
    fn blocking_fraction_matches_rejection_sampling() {
        // 10^7 samples in the plane, 10^6 above it
        for (d, samples) in [(2usize, 10_000_000usize), (3, 1_000_000), (4, 1_000_000)] {
            let est = monte_carlo_volume(
                |p| blocking_side(p) == Some(BlockingSide::Upper),
                d,
                samples,
                99,
            )
            .unwrap();
            let c1 = blocking_region_fraction(d).unwrap();
            assert!(
                (est.fraction - c1).abs() <= 3.0 * est.std_error,
                "d={d}: {} ± {} vs {c1}",
                est.fraction,
                est.std_error
            );
        }
    }

    #[test]
    fn blocking_regions_are_separated() {
        // cross pairs more than one radius apart (d >= 2)
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        while upper.len() < 200 || lower.len() < 200 {
            let p: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
            match blocking_side(&p) {
                Some(BlockingSide::Upper) => upper.push(p),
                Some(BlockingSide::Lower) => lower.push(p),
                None => {}
            }
        }
        for p in &upper {
            for q in &lower {
                let dist: f64 = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum();
                assert!(dist > 1.0);
            }
        }
    }

    fn arb_point(d: usize) -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(0.0f64..1.0, d)
    }

    proptest! {
        #[test]
        fn metric_axioms(d in 1usize..5, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut draw = || Point::new((0..d).map(|_| rng.random::<f64>()).collect()).unwrap();
            let (x, y, z) = (draw(), draw(), draw());
            let dxy = torus_distance(&x, &y).unwrap();
            let dyx = torus_distance(&y, &x).unwrap();
            let dxz = torus_distance(&x, &z).unwrap();
            let dzy = torus_distance(&z, &y).unwrap();
            prop_assert_eq!(dxy, dyx);
            prop_assert!(dxy <= dxz + dzy + 1e-12);
            prop_assert!(dxy <= (d as f64).sqrt() / 2.0 + 1e-12);
            prop_assert_eq!(torus_distance(&x, &x).unwrap(), 0.0);
            if x != y {
                prop_assert!(dxy > 0.0);
            }
        }

        #[test]
        fn translation_invariance(a in arb_point(3), b in arb_point(3), t in arb_point(3)) {
            let x = Point::new(a.clone()).unwrap();
            let y = Point::new(b.clone()).unwrap();
            let xs = Point::wrapped(a.iter().zip(&t).map(|(c, s)| c + s).collect()).unwrap();
            let ys = Point::wrapped(b.iter().zip(&t).map(|(c, s)| c + s).collect()).unwrap();
            let before = torus_distance(&x, &y).unwrap();
            let after = torus_distance(&xs, &ys).unwrap();
            prop_assert!((before - after).abs() < 1e-12);
        }
    }
}
