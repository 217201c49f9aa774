//! Worm-domain geometry.
//!
//! Four variants share one parameter set: the smooth worm, its truncated
//! companion, and the two unbounded non-smooth models `DBeta` (half-plane
//! slices) and `DBetaPrime` (strip slices), which are biholomorphic via
//! `z -> (exp(z1), z2)`. The module provides membership tests, the defining
//! function of the smooth worm with its gradient and complex Hessian, the
//! weakly pseudoconvex annulus, and the tensor quadrature grid used by the
//! volume integrators.

use crate::error::{Error, Result};
use crate::quad::{gauss_legendre, QuadConfig};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

/// Which worm variant a parameter set refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainVariant {
    SmoothWorm,
    TruncatedWorm,
    DBeta,
    DBetaPrime,
}

/// Single source of truth for the winding parameter and derived exponents.
#[derive(Debug, Clone, Copy)]
pub struct DomainParams {
    /// Winding parameter, strictly greater than pi/2.
    pub beta: f64,
    /// Half-width of the flat range of the profile: `mu = beta - pi/2`.
    pub mu: f64,
    /// Sharp exponent `nu = pi / (2 beta - pi) = pi / (2 mu)`.
    pub nu: f64,
    pub variant: DomainVariant,
}

impl DomainParams {
    pub fn new(beta: f64, variant: DomainVariant) -> Result<Self> {
        if !beta.is_finite() || beta <= FRAC_PI_2 {
            return Err(Error::domain("beta must be finite and exceed pi/2"));
        }
        let mu = beta - FRAC_PI_2;
        Ok(DomainParams {
            beta,
            mu,
            nu: PI / (2.0 * mu),
            variant,
        })
    }

    pub fn with_variant(&self, variant: DomainVariant) -> Self {
        DomainParams { variant, ..*self }
    }
}

/// Radial profile of the smooth worm.
///
/// Vanishes exactly on `[-mu, mu]`, rises like `(|x| - mu)^power` and is
/// calibrated so that `eta(a) = 1` with nonvanishing slope there. The power
/// is configurable (at least 3, so the second derivative is continuous);
/// the default quartic keeps finite-difference probes of the defining
/// function well conditioned.
#[derive(Debug, Clone, Copy)]
pub struct EtaProfile {
    pub mu: f64,
    pub a: f64,
    power: i32,
    coeff: f64,
}

impl EtaProfile {
    pub fn new(mu: f64, a: f64) -> Result<Self> {
        Self::with_power(mu, a, 4)
    }

    pub fn with_power(mu: f64, a: f64, power: i32) -> Result<Self> {
        if !(mu > 0.0) || !(a > mu) {
            return Err(Error::config("eta profile requires a > mu > 0"));
        }
        if power < 3 {
            return Err(Error::config("eta rise power must be at least 3"));
        }
        Ok(EtaProfile {
            mu,
            a,
            power,
            coeff: (a - mu).powi(-power),
        })
    }

    /// Profile for the worm with parameter `beta`, cap transition at
    /// `a = mu + 1`.
    pub fn for_beta(beta: f64) -> Result<Self> {
        let mu = beta - FRAC_PI_2;
        Self::new(mu, mu + 1.0)
    }

    pub fn eta(&self, x: f64) -> f64 {
        let t = x.abs() - self.mu;
        if t <= 0.0 {
            0.0
        } else {
            self.coeff * t.powi(self.power)
        }
    }

    pub fn eta_prime(&self, x: f64) -> f64 {
        let t = x.abs() - self.mu;
        if t <= 0.0 {
            0.0
        } else {
            x.signum() * self.coeff * self.power as f64 * t.powi(self.power - 1)
        }
    }

    pub fn eta_second(&self, x: f64) -> f64 {
        let t = x.abs() - self.mu;
        if t <= 0.0 {
            0.0
        } else {
            self.coeff * (self.power * (self.power - 1)) as f64 * t.powi(self.power - 2)
        }
    }
}

/// A point of C^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointC2 {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl PointC2 {
    pub fn new(z1: Complex64, z2: Complex64) -> Self {
        PointC2 { z1, z2 }
    }

    /// `log |z2|^2`, the coordinate every defining inequality runs through.
    pub fn log_abs_z2_sq(&self) -> Result<f64> {
        if self.z2 == Complex64::new(0.0, 0.0) {
            return Err(Error::domain("log singularity: z2 = 0"));
        }
        Ok(self.z2.norm_sqr().ln())
    }
}

/// Direction in C^2 for Levi-form evaluation.
#[derive(Debug, Clone, Copy)]
pub struct TangentVector {
    pub v1: Complex64,
    pub v2: Complex64,
}

/// Strict-membership test for the variant carried by `params`.
///
/// `eta` must be supplied for the smooth worm and is ignored otherwise.
/// Boundary points test false.
pub fn contains(params: &DomainParams, eta: Option<&EtaProfile>, p: &PointC2) -> Result<bool> {
    let l = p.log_abs_z2_sq()?;
    match params.variant {
        DomainVariant::SmoothWorm => {
            let eta = eta.ok_or_else(|| {
                Error::config("smooth worm membership requires an eta profile")
            })?;
            let center = Complex64::from_polar(1.0, l);
            Ok((p.z1 - center).norm_sqr() < 1.0 - eta.eta(l))
        }
        DomainVariant::TruncatedWorm => {
            let center = Complex64::from_polar(1.0, l);
            Ok((p.z1 - center).norm_sqr() < 1.0 && l.abs() < params.mu)
        }
        DomainVariant::DBeta => {
            let rot = p.z1 * Complex64::from_polar(1.0, -l);
            Ok(rot.re > 0.0 && l.abs() < params.mu)
        }
        DomainVariant::DBetaPrime => Ok((p.z1.im - l).abs() < FRAC_PI_2 && l.abs() < params.mu),
    }
}

/// Defining function of the smooth worm:
/// `|z1 - exp(i log|z2|^2)|^2 - 1 + eta(log|z2|^2)`.
///
/// Negative inside, zero on the boundary, positive outside.
pub fn rho(eta: &EtaProfile, p: &PointC2) -> Result<f64> {
    let l = p.log_abs_z2_sq()?;
    let center = Complex64::from_polar(1.0, l);
    Ok((p.z1 - center).norm_sqr() - 1.0 + eta.eta(l))
}

/// Holomorphic (Wirtinger) gradient of [`rho`].
pub fn rho_gradient(eta: &EtaProfile, p: &PointC2) -> Result<(Complex64, Complex64)> {
    let l = p.log_abs_z2_sq()?;
    let phase = Complex64::from_polar(1.0, -l); // exp(-i log|z2|^2)
    let d1 = p.z1.conj() - phase;
    let radial = eta.eta_prime(l) - 2.0 * (p.z1 * phase).im;
    let d2 = Complex64::new(radial, 0.0) / p.z2;
    Ok((d1, d2))
}

/// Norm of the real four-dimensional gradient reconstructed from the
/// holomorphic one.
pub fn rho_real_gradient_norm(eta: &EtaProfile, p: &PointC2) -> Result<f64> {
    let (d1, d2) = rho_gradient(eta, p)?;
    Ok(2.0 * (d1.norm_sqr() + d2.norm_sqr()).sqrt())
}

/// Complex Hessian of [`rho`] at `p` applied to `(v, conj v)`.
///
/// The value is real; it vanishes on tangential directions along the
/// weakly pseudoconvex annulus and is positive on tangential directions at
/// every other boundary point.
pub fn levi_form(eta: &EtaProfile, p: &PointC2, v: &TangentVector) -> Result<f64> {
    let l = p.log_abs_z2_sq()?;
    let phase = Complex64::from_polar(1.0, -l);
    // d^2 rho / dz1 dzbar1 = 1
    // d^2 rho / dz1 dzbar2 = i exp(-i L) / conj(z2)
    // d^2 rho / dz2 dzbar2 = (2 Re(z1 exp(-i L)) + eta''(L)) / |z2|^2
    let h12 = Complex64::i() * phase / p.z2.conj();
    let h22 = (2.0 * (p.z1 * phase).re + eta.eta_second(l)) / p.z2.norm_sqr();
    let cross = h12 * v.v1 * v.v2.conj();
    Ok(v.v1.norm_sqr() + 2.0 * cross.re + h22 * v.v2.norm_sqr())
}

/// A complex tangent direction at a boundary point: the rotated gradient
/// `(-d rho/dz2, d rho/dz1)`.
pub fn complex_tangent(eta: &EtaProfile, p: &PointC2) -> Result<TangentVector> {
    let (d1, d2) = rho_gradient(eta, p)?;
    Ok(TangentVector { v1: -d2, v2: d1 })
}

/// Membership in the weakly pseudoconvex annulus
/// `{ z1 = 0, |log|z2|^2| <= mu }`. `z1` is compared against zero with an
/// absolute tolerance of 1e-14.
pub fn annulus_contains(mu: f64, p: &PointC2) -> Result<bool> {
    let l = p.log_abs_z2_sq()?;
    Ok(p.z1.norm() <= 1e-14 && l.abs() <= mu)
}

/// The biholomorphism from strip slices to half-plane slices:
/// `(z1, z2) -> (exp(z1), z2)` with complex Jacobian determinant `exp(z1)`.
pub fn map_prime_to_unprime(p: &PointC2) -> (PointC2, Complex64) {
    let jac = p.z1.exp();
    (PointC2::new(jac, p.z2), jac)
}

/// Boundary point of the smooth worm from slice coordinates: profile
/// position `s = log|z2|^2`, disc angle `phi`, circle angle `theta`.
///
/// Requires `eta(s) < 1` so the slice disc is nonempty; the returned point
/// satisfies `rho = 0` up to rounding.
pub fn boundary_point(eta: &EtaProfile, s: f64, phi: f64, theta: f64) -> Result<PointC2> {
    let e = eta.eta(s);
    if e >= 1.0 {
        return Err(Error::domain("empty slice: eta(s) >= 1"));
    }
    let radius = (1.0 - e).sqrt();
    let z1 = Complex64::from_polar(1.0, s) + Complex64::from_polar(radius, phi);
    let z2 = Complex64::from_polar((0.5 * s).exp(), theta);
    Ok(PointC2::new(z1, z2))
}

/// Newton projection of `p` onto the zero set of [`rho`], following the real
/// gradient. Converges quadratically from nearby starting points.
pub fn project_to_boundary(eta: &EtaProfile, p: &PointC2, tol: f64) -> Result<PointC2> {
    let mut q = *p;
    for _ in 0..60 {
        let r = rho(eta, &q)?;
        if r.abs() < tol {
            return Ok(q);
        }
        let (d1, d2) = rho_gradient(eta, &q)?;
        let g2 = d1.norm_sqr() + d2.norm_sqr();
        if g2 < 1e-30 {
            return Err(Error::domain("vanishing gradient during projection"));
        }
        let step = r / (2.0 * g2);
        q.z1 -= step * d1.conj();
        q.z2 -= step * d2.conj();
    }
    Err(Error::domain("boundary projection did not converge"))
}

/// One quadrature node of the four-coordinate grid. `y = s + u` with
/// `|u| < pi/2`; the weight already contains every Jacobian factor.
#[derive(Debug, Clone, Copy)]
pub struct GridNode {
    pub x: f64,
    pub y: f64,
    pub s: f64,
    pub theta: f64,
    pub weight: f64,
}

/// Tensor-product quadrature grid over `DBeta` or `DBetaPrime` in the
/// coordinates `(x, y, s, theta)` where `z1 = x + iy` (strip picture),
/// `|y - s| < pi/2`, `|s| < beta - pi/2`, and `z2 = exp(s/2) exp(i theta)`.
///
/// For the `DBeta` variant the nodes are pushed through the biholomorphism
/// and the weights carry the extra `exp(2x)` Jacobian factor, so sums over
/// the grid integrate over the half-plane-slice worm truncated to
/// `|log|zeta1|| < X`.
#[derive(Debug, Clone)]
pub struct DomainGrid {
    pub x: Vec<(f64, f64)>,
    pub u: Vec<(f64, f64)>,
    pub s: Vec<(f64, f64)>,
    pub thetas: Vec<f64>,
    pub theta_weight: f64,
    variant: DomainVariant,
}

pub(crate) const GRID_THETA_NODES: usize = 32;

/// Build the tensor grid for `params` under `cfg`; see [`DomainGrid`].
pub fn domain_quadrature_grid(params: &DomainParams, cfg: &QuadConfig) -> Result<DomainGrid> {
    cfg.validate()?;
    if !matches!(
        params.variant,
        DomainVariant::DBeta | DomainVariant::DBetaPrime
    ) {
        return Err(Error::domain(
            "quadrature grid is defined for DBeta and DBetaPrime only",
        ));
    }
    let x_max = cfg.line_truncation.unwrap_or(40.0 / params.nu);
    if !(x_max > 0.0) {
        return Err(Error::config("truncation radius must be positive"));
    }

    // x: dyadically widening Gauss-Legendre panels, mirrored about 0.
    let order = (cfg.panel_order / 2).max(4);
    let rule = gauss_legendre(order);
    let mut edges = vec![0.0_f64];
    let mut w = 1.0_f64.min(x_max);
    while *edges.last().unwrap() < x_max {
        let next = (edges.last().unwrap() + w).min(x_max);
        edges.push(next);
        w *= 2.0;
    }
    let mut x = Vec::new();
    for k in (0..edges.len() - 1).rev() {
        push_panel(&mut x, -edges[k + 1], -edges[k], &rule);
    }
    for k in 0..edges.len() - 1 {
        push_panel(&mut x, edges[k], edges[k + 1], &rule);
    }

    let full = gauss_legendre(cfg.panel_order);
    let mut u = Vec::new();
    push_panel(&mut u, -FRAC_PI_2, FRAC_PI_2, &full);
    let mut s = Vec::new();
    push_panel(&mut s, -params.mu, params.mu, &full);

    let n_theta = GRID_THETA_NODES.max((cfg.panel_order as usize) / 2);
    let thetas: Vec<f64> = (0..n_theta)
        .map(|k| 2.0 * PI * k as f64 / n_theta as f64)
        .collect();

    // Fold the DBeta Jacobian |exp(z1)|^2 = exp(2x) into the x weights.
    let x = if params.variant == DomainVariant::DBeta {
        x.into_iter()
            .map(|(xi, wi)| (xi, wi * (2.0 * xi).exp()))
            .collect()
    } else {
        x
    };

    Ok(DomainGrid {
        x,
        u,
        s,
        thetas,
        theta_weight: 2.0 * PI / n_theta as f64,
        variant: params.variant,
    })
}

fn push_panel(out: &mut Vec<(f64, f64)>, a: f64, b: f64, rule: &crate::quad::GaussRule) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        out.push((c + h * x, h * w));
    }
}

impl DomainGrid {
    pub fn len(&self) -> usize {
        self.x.len() * self.u.len() * self.s.len() * self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All nodes sharing the x node of index `ix`, in a fixed order.
    pub fn iter_x_slice(&self, ix: usize) -> impl Iterator<Item = GridNode> + '_ {
        let (xv, xw) = self.x[ix];
        self.s.iter().flat_map(move |&(sv, sw)| {
            let vol_s = 0.5 * sv.exp() * sw;
            self.u.iter().flat_map(move |&(uv, uw)| {
                self.thetas.iter().map(move |&tv| GridNode {
                    x: xv,
                    y: sv + uv,
                    s: sv,
                    theta: tv,
                    weight: xw * uw * vol_s * self.theta_weight,
                })
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = GridNode> + '_ {
        (0..self.x.len()).flat_map(move |ix| self.iter_x_slice(ix))
    }

    /// Sum of all weights (the covered volume).
    pub fn total_weight(&self) -> f64 {
        (0..self.x.len())
            .map(|ix| self.iter_x_slice(ix).map(|n| n.weight).sum::<f64>())
            .sum()
    }

    pub fn variant(&self) -> DomainVariant {
        self.variant
    }
}

impl GridNode {
    /// Embed the node into C^2 for its variant.
    pub fn point_for(&self, variant: DomainVariant) -> PointC2 {
        let z1 = Complex64::new(self.x, self.y);
        let z2 = Complex64::from_polar((0.5 * self.s).exp(), self.theta);
        match variant {
            DomainVariant::DBeta => PointC2::new(z1.exp(), z2),
            _ => PointC2::new(z1, z2),
        }
    }

    pub fn point(&self) -> PointC2 {
        // The grid hands nodes out through iter_x_slice without variant
        // context; DBetaPrime coordinates are the common case.
        PointC2::new(
            Complex64::new(self.x, self.y),
            Complex64::from_polar((0.5 * self.s).exp(), self.theta),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn beta32() -> DomainParams {
        DomainParams::new(1.5 * PI, DomainVariant::DBetaPrime).unwrap()
    }

    #[test]
    fn params_invariants() {
        let p = beta32();
        assert!((p.mu - PI).abs() < 1e-15);
        assert!((p.nu - 0.5).abs() < 1e-15);
        // nu < 1 exactly when beta > pi
        let q = DomainParams::new(0.9 * PI, DomainVariant::DBeta).unwrap();
        assert!(q.nu > 1.0);
        assert!(DomainParams::new(FRAC_PI_2, DomainVariant::DBeta).is_err());
    }

    #[test]
    fn membership_examples() {
        let prime = beta32();
        let unprime = prime.with_variant(DomainVariant::DBeta);
        assert!(contains(&prime, None, &PointC2::new(c(0.0, 0.0), c(1.0, 0.0))).unwrap());
        assert!(contains(&unprime, None, &PointC2::new(c(1.0, 0.0), c(1.0, 0.0))).unwrap());
        // Boundary point: |Im z1 - 0| = pi/2 exactly.
        assert!(!contains(
            &prime,
            None,
            &PointC2::new(c(0.0, FRAC_PI_2), c(1.0, 0.0))
        )
        .unwrap());
        // z2 = 0 is a log singularity.
        assert!(matches!(
            contains(&prime, None, &PointC2::new(c(0.0, 0.0), c(0.0, 0.0))),
            Err(Error::Domain(_))
        ));
        // Smooth worm requires the profile.
        let smooth = prime.with_variant(DomainVariant::SmoothWorm);
        assert!(matches!(
            contains(&smooth, None, &PointC2::new(c(0.5, 0.0), c(1.0, 0.0))),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn eta_profile_properties() {
        let mu = PI;
        let a = PI + 1.0;
        let eta = EtaProfile::new(mu, a).unwrap();
        for k in 0..=400 {
            let x = -1.5 * a + 3.0 * a * k as f64 / 400.0;
            // Nonnegative, even, convex on a sampling grid.
            assert!(eta.eta(x) >= 0.0);
            assert_eq!(eta.eta(x), eta.eta(-x));
            assert!(eta.eta_second(x) >= 0.0);
            // Vanishes exactly on [-mu, mu].
            assert_eq!(eta.eta(x) == 0.0, x.abs() <= mu);
            // Exceeds one exactly beyond the transition.
            assert_eq!(eta.eta(x) > 1.0, x.abs() > a);
        }
        // Nonvanishing slope where the profile crosses one.
        assert!(eta.eta_prime(a).abs() > 0.0);
        assert!((eta.eta(a) - 1.0).abs() < 1e-15);
        assert!(EtaProfile::new(PI, PI).is_err());
        assert!(EtaProfile::with_power(PI, PI + 1.0, 2).is_err());
    }

    #[test]
    fn rho_examples() {
        let eta = EtaProfile::new(PI, PI + 1.0).unwrap();
        let p0 = PointC2::new(c(0.0, 0.0), c(1.0, 0.0));
        assert!(rho(&eta, &p0).unwrap().abs() < 1e-15);
        let p1 = PointC2::new(c(2.0, 0.0), c(1.0, 0.0));
        assert!(rho(&eta, &p1).unwrap().abs() < 1e-15);
        let p2 = PointC2::new(c(1.0, 0.0), c(1.0, 0.0));
        assert!((rho(&eta, &p2).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn gradient_at_origin_slice() {
        let eta = EtaProfile::new(PI, PI + 1.0).unwrap();
        let p = PointC2::new(c(0.0, 0.0), c(1.0, 0.0));
        let (d1, d2) = rho_gradient(&eta, &p).unwrap();
        assert!((d1 - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(d2.norm() < 1e-15); // eta'(0) = 0 and z1 = 0
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let eta = EtaProfile::new(PI, PI + 1.0).unwrap();
        let p = PointC2::new(c(0.7, 0.3), c(1.2, -0.4));
        let (d1, d2) = rho_gradient(&eta, &p).unwrap();
        let h = 1e-5;
        let fd = |dz1: Complex64, dz2: Complex64| {
            rho(&eta, &PointC2::new(p.z1 + dz1, p.z2 + dz2)).unwrap()
        };
        // d/dz = (d/dx - i d/dy)/2 for the holomorphic Wirtinger derivative
        // of a real function.
        let gx1 = (fd(c(h, 0.0), c(0.0, 0.0)) - fd(c(-h, 0.0), c(0.0, 0.0))) / (2.0 * h);
        let gy1 = (fd(c(0.0, h), c(0.0, 0.0)) - fd(c(0.0, -h), c(0.0, 0.0))) / (2.0 * h);
        let fd1 = c(gx1, -gy1) * 0.5;
        assert!((d1 - fd1).norm() < 1e-8, "{d1} vs {fd1}");
        let gx2 = (fd(c(0.0, 0.0), c(h, 0.0)) - fd(c(0.0, 0.0), c(-h, 0.0))) / (2.0 * h);
        let gy2 = (fd(c(0.0, 0.0), c(0.0, h)) - fd(c(0.0, 0.0), c(0.0, -h))) / (2.0 * h);
        let fd2 = c(gx2, -gy2) * 0.5;
        assert!((d2 - fd2).norm() < 1e-8, "{d2} vs {fd2}");
    }

    #[test]
    fn levi_form_on_annulus() {
        let eta = EtaProfile::new(PI, PI + 1.0).unwrap();
        // A point of the annulus: z1 = 0, |z2| = 1.
        let p = PointC2::new(c(0.0, 0.0), c(1.0, 0.0));
        let tangent = levi_form(
            &eta,
            &p,
            &TangentVector {
                v1: c(0.0, 0.0),
                v2: c(1.0, 0.0),
            },
        )
        .unwrap();
        assert_eq!(tangent, 0.0);
        let normal = levi_form(
            &eta,
            &p,
            &TangentVector {
                v1: c(1.0, 0.0),
                v2: c(0.0, 0.0),
            },
        )
        .unwrap();
        assert!((normal - 1.0).abs() < 1e-15);
    }

    #[test]
    fn annulus_membership() {
        let p = PointC2::new(c(0.0, 0.0), c(1.0, 0.0));
        assert!(annulus_contains(PI, &p).unwrap());
        let outside = PointC2::new(c(0.0, 0.0), c((PI / 2.0 + 0.1).exp(), 0.0));
        assert!(!annulus_contains(PI, &outside).unwrap());
        let off_core = PointC2::new(c(0.5, 0.0), c(1.0, 0.0));
        assert!(!annulus_contains(PI, &off_core).unwrap());
    }

    #[test]
    fn biholomorphism_examples() {
        let (img, jac) = map_prime_to_unprime(&PointC2::new(c(0.0, 0.0), c(1.0, 0.0)));
        assert!((img.z1 - c(1.0, 0.0)).norm() < 1e-15);
        assert!((jac - c(1.0, 0.0)).norm() < 1e-15);
        let q = PointC2::new(c(0.0, PI / 4.0), c(1.0, 0.0));
        let (img, jac) = map_prime_to_unprime(&q);
        let expect = Complex64::from_polar(1.0, PI / 4.0);
        assert!((img.z1 - expect).norm() < 1e-15);
        assert!((jac - expect).norm() < 1e-15);
    }

    #[test]
    fn boundary_points_satisfy_rho_zero() {
        let eta = EtaProfile::new(PI, PI + 1.0).unwrap();
        for (s, phi, theta) in [
            (0.0, 1.0, 0.3),
            (2.5, -0.7, 1.1),
            (-3.3, 2.0, 4.0),
            (PI + 0.5, 0.1, 2.2),
        ] {
            let p = boundary_point(&eta, s, phi, theta).unwrap();
            assert!(rho(&eta, &p).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn newton_projection_lands_on_boundary() {
        let eta = EtaProfile::new(PI, PI + 1.0).unwrap();
        let near = PointC2::new(c(1.9, 0.05), c(1.01, 0.0));
        let proj = project_to_boundary(&eta, &near, 1e-10).unwrap();
        assert!(rho(&eta, &proj).unwrap().abs() < 1e-10);
        assert!(rho_real_gradient_norm(&eta, &proj).unwrap() > 1e-6);
    }

    #[test]
    fn grid_theta_circle_weight() {
        let params = beta32();
        let cfg = QuadConfig {
            line_truncation: Some(1.0),
            ..QuadConfig::default()
        };
        let grid = domain_quadrature_grid(&params, &cfg).unwrap();
        let s: f64 = grid.thetas.iter().map(|_| grid.theta_weight).sum();
        assert!((s - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn grid_requires_unbounded_variant() {
        let params = beta32().with_variant(DomainVariant::SmoothWorm);
        assert!(domain_quadrature_grid(&params, &QuadConfig::default()).is_err());
    }

    #[test]
    fn grid_nodes_embed_into_their_variant() {
        let cfg = QuadConfig {
            line_truncation: Some(1.0),
            panel_order: 4,
            ..QuadConfig::default()
        };
        for variant in [DomainVariant::DBetaPrime, DomainVariant::DBeta] {
            let params = beta32().with_variant(variant);
            let grid = domain_quadrature_grid(&params, &cfg).unwrap();
            for node in grid.iter().step_by(97) {
                let p = node.point_for(variant);
                assert!(
                    contains(&params, None, &p).unwrap(),
                    "{variant:?} node {node:?} -> {p:?}"
                );
            }
        }
    }

    #[test]
    fn mapped_grid_volume_carries_jacobian() {
        // Volume of the image of the {|x| < 1} slab under the
        // biholomorphism: the exp(2x) Jacobian turns the x-factor 2 into
        // sinh(2) * ... (e^2 - e^-2)/2 * fiber.
        let params = beta32().with_variant(DomainVariant::DBeta);
        let cfg = QuadConfig {
            line_truncation: Some(1.0),
            ..QuadConfig::default()
        };
        let one = |_: &PointC2| Complex64::new(1.0, 0.0);
        let r = crate::quad::integrate_domain(one, &params, &cfg).unwrap();
        let expect = (2.0_f64).sinh() * PI * PI.sinh() * 2.0 * PI;
        assert!(
            ((r.value.re - expect) / expect).abs() < 1e-10,
            "{} vs {expect}",
            r.value.re
        );
    }

    #[test]
    fn grid_slab_volume_closed_form() {
        // Volume of the {|x| < 1} slab equals 2 * pi * sinh(mu) * 2 pi.
        let params = beta32();
        let cfg = QuadConfig {
            line_truncation: Some(1.0),
            ..QuadConfig::default()
        };
        let grid = domain_quadrature_grid(&params, &cfg).unwrap();
        let expect = 2.0 * PI * PI.sinh() * 2.0 * PI;
        let total = grid.total_weight();
        assert!(
            ((total - expect) / expect).abs() < 1e-12,
            "{total} vs {expect}"
        );
    }
}
