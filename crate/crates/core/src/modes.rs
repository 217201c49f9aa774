//! Fourier-mode layer.
//!
//! Rotations in `z2` split the Bergman space of the non-smooth worms into
//! weighted spaces over the strip `|Im w| < beta`; the weight for angular
//! index `j` is the convolution of two box profiles, one of them carrying
//! an exponential. Both the weight and its bilateral transform have simple
//! closed forms implemented here, with the removable singularities of the
//! transform filled by series.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

/// `sinh(u)/u` continued through `u = 0`.
///
/// Below the crossover the five-term Taylor series agrees with the direct
/// ratio to full precision (validated in the tests to 1e-13 at the seam).
pub fn sinhc(u: f64) -> f64 {
    if u.abs() < 1e-3 {
        let u2 = u * u;
        1.0 + u2 / 6.0 * (1.0 + u2 / 20.0 * (1.0 + u2 / 42.0 * (1.0 + u2 / 72.0)))
    } else {
        u.sinh() / u
    }
}

/// Complex `sinh(u)/u` with the same series fill near the origin.
pub fn sinhc_c(u: Complex64) -> Complex64 {
    if u.norm_sqr() < 1e-6 {
        let u2 = u * u;
        let one = Complex64::new(1.0, 0.0);
        one + u2 / 6.0 * (one + u2 / 20.0 * (one + u2 / 42.0 * (one + u2 / 72.0)))
    } else {
        u.sinh() / u
    }
}

/// The strip weight for one angular mode.
#[derive(Debug, Clone, Copy)]
pub struct WeightProfile {
    pub beta: f64,
    pub j: i32,
}

impl WeightProfile {
    pub fn new(beta: f64, j: i32) -> Result<Self> {
        if !beta.is_finite() || beta <= FRAC_PI_2 {
            return Err(Error::domain("beta must exceed pi/2"));
        }
        Ok(WeightProfile { beta, j })
    }

    /// Center of the shifted transform factor, `(j + 1) / 2`.
    pub fn shift(&self) -> f64 {
        (self.j + 1) as f64 / 2.0
    }

    /// The weight itself: overlap integral of the two box profiles,
    ///
    /// positive exactly on `|y| < beta` and piecewise exponential there.
    pub fn lambda(&self, y: f64) -> f64 {
        let half = self.beta - FRAC_PI_2;
        let lo = (y - FRAC_PI_2).max(-half);
        let hi = (y + FRAC_PI_2).min(half);
        if lo >= hi {
            return 0.0;
        }
        let a = (self.j + 1) as f64;
        if self.j == -1 {
            hi - lo
        } else {
            // exp(a*hi) - exp(a*lo) computed through expm1 so narrow
            // overlaps keep full relative accuracy.
            (a * lo).exp() * (a * (hi - lo)).exp_m1() / a
        }
    }

    /// Bilateral transform of [`Self::lambda`] evaluated on the line that
    /// matters for the kernel formula:
    ///
    /// `sinh(pi xi) sinh((2 beta - pi)(xi - (j+1)/2)) / (xi (xi - (j+1)/2))`,
    ///
    /// a strictly positive total function of real `xi`.
    pub fn lambda_hat(&self, xi: f64) -> f64 {
        let b = 2.0 * self.beta - PI;
        PI * b * sinhc(PI * xi) * sinhc(b * (xi - self.shift()))
    }

    /// Analytic continuation of [`Self::lambda_hat`]; the kernel integrand
    /// divides by this along a shifted contour.
    pub fn lambda_hat_c(&self, s: Complex64) -> Complex64 {
        let b = 2.0 * self.beta - PI;
        PI * b * sinhc_c(PI * s) * sinhc_c(b * (s - self.shift()))
    }

    /// Support of the weight, `(-beta, beta)`.
    pub fn support(&self) -> (f64, f64) {
        (-self.beta, self.beta)
    }

    /// Interior breakpoints where the closed form of the weight changes.
    pub fn kinks(&self) -> [f64; 2] {
        let k = (self.beta - PI).abs();
        [-k, k]
    }
}

/// Angular Fourier coefficient of a function sampled on the circle
/// `|z2| = radius` at `N` equispaced angles, normalized by the `z2`-power
/// so a pure mode `g(z1) z2^j` projects to `g(z1)`.
///
/// Exact for trigonometric polynomials of degree below `N/2`; requires
/// `N >= 4 (|j| + 1)`.
pub fn mode_project(samples: &[Complex64], j: i32, radius: f64) -> Result<Complex64> {
    let n = samples.len();
    if n < 4 * (j.unsigned_abs() as usize + 1) {
        return Err(Error::config(format!(
            "mode projection for j = {j} needs at least {} samples, got {n}",
            4 * (j.unsigned_abs() + 1)
        )));
    }
    if !(radius > 0.0) {
        return Err(Error::config("circle radius must be positive"));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, f) in samples.iter().enumerate() {
        let theta = 2.0 * PI * k as f64 / n as f64;
        acc += f * Complex64::from_polar(1.0, -(j as f64) * theta);
    }
    Ok(acc / n as f64 / radius.powi(j))
}

#[cfg(test)]
mod tests {
    use super::*;
    

    #[test]
    fn lambda_closed_form_values() {
        // beta = pi, j = -1, y = 0: overlap of two width-pi boxes.
        let w = WeightProfile::new(PI, -1).unwrap();
        assert!((w.lambda(0.0) - PI).abs() < 1e-14);
        // Vanishes outside the support.
        for y in [PI, -PI, PI + 0.5, 10.0] {
            assert_eq!(w.lambda(y), 0.0);
        }
        // beta = 3 pi / 2, j = 0, y = 0 -> 2 sinh(pi/2).
        let w = WeightProfile::new(1.5 * PI, 0).unwrap();
        assert!((w.lambda(0.0) - 2.0 * (FRAC_PI_2).sinh()).abs() < 1e-13);
    }

    #[test]
    fn lambda_positive_inside_support() {
        for (beta, j) in [(PI, -1), (1.5 * PI, 3), (1.25 * PI, -4), (2.0 * PI, 0)] {
            let w = WeightProfile::new(beta, j).unwrap();
            for k in 0..200 {
                let y = -beta + (2.0 * beta) * (k as f64 + 0.5) / 200.0;
                assert!(w.lambda(y) > 0.0, "beta={beta} j={j} y={y}");
            }
        }
    }

    #[test]
    fn lambda_hat_double_limit() {
        // beta = pi, j = -1: both removable points coincide at 0 and the
        // limit is pi^2.
        let w = WeightProfile::new(PI, -1).unwrap();
        assert!((w.lambda_hat(0.0) - PI * PI).abs() < 1e-12);
    }

    #[test]
    fn lambda_hat_positive_on_grid() {
        for (beta, j) in [(PI, -1), (1.5 * PI, 2), (2.0 * PI, -3)] {
            let w = WeightProfile::new(beta, j).unwrap();
            for k in 0..=400 {
                let xi = -20.0 + 40.0 * k as f64 / 400.0;
                assert!(w.lambda_hat(xi) > 0.0, "beta={beta} j={j} xi={xi}");
            }
        }
    }

    #[test]
    fn lambda_hat_matches_weight_transform() {
        // lambda_hat equals the bilateral transform of lambda computed by
        // piecewise Gauss quadrature between the weight's breakpoints (the
        // weight is only continuous there, so panels must not straddle
        // them).
        for (beta, j) in [(1.5 * PI, -1), (1.5 * PI, 2), (1.25 * PI, -3)] {
            let w = WeightProfile::new(beta, j).unwrap();
            for xi in [-3.0, -0.5, 0.0, w.shift(), 1.7, 4.0] {
                let q = transform_oracle(&w, xi);
                let direct = w.lambda_hat(xi);
                assert!(
                    ((q - direct) / direct).abs() < 1e-10,
                    "beta={beta} j={j} xi={xi}: {q} vs {direct}"
                );
            }
        }
    }

    /// Piecewise-Gauss transform of the weight: panels between consecutive
    /// breakpoints, each subdivided until the exponential factor varies by
    /// at most ~e^20 per panel.
    fn transform_oracle(w: &WeightProfile, xi: f64) -> f64 {
        let rule = crate::quad::gauss_legendre(32);
        let (lo, hi) = w.support();
        let [k0, k1] = w.kinks();
        let mut cuts = vec![lo, k0, k1, hi];
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        let mut total = 0.0;
        let rate = 2.0 * xi.abs() + (w.j + 1) as f64;
        for seg in cuts.windows(2) {
            let n_sub = (1.0 + (seg[1] - seg[0]) * rate.abs() / 20.0).ceil() as usize;
            for i in 0..n_sub {
                let a = seg[0] + (seg[1] - seg[0]) * i as f64 / n_sub as f64;
                let b = seg[0] + (seg[1] - seg[0]) * (i + 1) as f64 / n_sub as f64;
                let c = 0.5 * (a + b);
                let h = 0.5 * (b - a);
                for (x, wt) in rule.nodes.iter().zip(&rule.weights) {
                    let t = c + h * x;
                    total += h * wt * (-2.0 * t * xi).exp() * w.lambda(t);
                }
            }
        }
        total
    }

    #[test]
    fn sinhc_series_crossover_consistency() {
        for u in [9.0e-4, 1.0e-3, 1.1e-3, -9.9e-4] {
            let series = {
                let u2: f64 = u * u;
                1.0 + u2 / 6.0 * (1.0 + u2 / 20.0 * (1.0 + u2 / 42.0 * (1.0 + u2 / 72.0)))
            };
            let direct = u.sinh() / u;
            assert!(((series - direct) / direct).abs() < 1e-13);
        }
    }

    #[test]
    fn lambda_hat_reconstructs_sinh_product() {
        let w = WeightProfile::new(1.5 * PI, 1).unwrap();
        let b = 2.0 * w.beta - PI;
        for xi in [-5.0_f64, -1.2, 0.4, 2.5, 7.0] {
            if xi.abs() < 1e-2 || (xi - w.shift()).abs() < 1e-2 {
                continue;
            }
            let lhs = w.lambda_hat(xi) * xi * (xi - w.shift());
            let rhs = (PI * xi).sinh() * (b * (xi - w.shift())).sinh();
            assert!(((lhs - rhs) / rhs).abs() < 1e-13);
        }
    }

    #[test]
    fn mode_project_examples() {
        let n = 64;
        let circle =
            |f: &dyn Fn(Complex64) -> Complex64, r: f64| -> Vec<Complex64> {
                (0..n)
                    .map(|k| f(Complex64::from_polar(r, 2.0 * PI * k as f64 / n as f64)))
                    .collect()
            };
        // z + 1/z on the unit circle.
        let samples = circle(&|z| z + 1.0 / z, 1.0);
        assert!((mode_project(&samples, 1, 1.0).unwrap() - 1.0).norm() < 1e-12);
        assert!((mode_project(&samples, -1, 1.0).unwrap() - 1.0).norm() < 1e-12);
        assert!(mode_project(&samples, 0, 1.0).unwrap().norm() < 1e-12);
        // Constant function.
        let ones = circle(&|_| Complex64::new(1.0, 0.0), 1.0);
        assert!((mode_project(&ones, 0, 1.0).unwrap() - 1.0).norm() < 1e-12);
        assert!(mode_project(&ones, 2, 1.0).unwrap().norm() < 1e-12);
        // z^3 on |z| = 2 normalizes back to 1.
        let cubes = circle(&|z| z * z * z, 2.0);
        assert!((mode_project(&cubes, 3, 2.0).unwrap() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn mode_project_undersampled_is_config_error() {
        let samples = vec![Complex64::new(1.0, 0.0); 8];
        assert!(matches!(
            mode_project(&samples, 5, 1.0),
            Err(Error::Config(_))
        ));
    }
}
