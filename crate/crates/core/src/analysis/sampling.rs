//! Seeded samplers for randomized suites.
//!
//! Everything draws from a caller-supplied RNG so whole suites replay
//! bit-identically from a seed.

use crate::domains::{
    boundary_point, map_prime_to_unprime, DomainParams, EtaProfile, PointC2,
};
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::{FRAC_PI_2, PI};

/// Interior point of the strip-slice worm with comfortable margins from
/// every boundary component.
///
/// Margins are sized for the kernel mode sums: terms decay per mode at the
/// two rates `(pi - |u_z + u_w|)/2` and `(2 mu - |s_z + s_w|)/2` (distances
/// of the pair to the slanted edges and to the annulus edges), so pairs of
/// these points, including diagonals, freeze well inside the default mode
/// cap.
pub fn interior_point_prime<R: Rng>(params: &DomainParams, rng: &mut R) -> PointC2 {
    let s = rng.gen_range(-0.75 * params.mu..0.75 * params.mu);
    let u = rng.gen_range(-0.5 * FRAC_PI_2..0.5 * FRAC_PI_2);
    let x = rng.gen_range(-2.0..2.0);
    let theta = rng.gen_range(0.0..2.0 * PI);
    PointC2::new(
        Complex64::new(x, s + u),
        Complex64::from_polar((0.5 * s).exp(), theta),
    )
}

/// Interior point of the half-plane-slice worm (image of the strip sampler
/// under the biholomorphism).
pub fn interior_point_unprime<R: Rng>(params: &DomainParams, rng: &mut R) -> PointC2 {
    let (img, _) = map_prime_to_unprime(&interior_point_prime(params, rng));
    img
}

/// Point of the weakly pseudoconvex annulus `{z1 = 0, |log|z2|^2| <= mu}`.
pub fn annulus_point<R: Rng>(mu: f64, rng: &mut R) -> PointC2 {
    let s = rng.gen_range(-mu..mu);
    let theta = rng.gen_range(0.0..2.0 * PI);
    PointC2::new(
        Complex64::new(0.0, 0.0),
        Complex64::from_polar((0.5 * s).exp(), theta),
    )
}

/// Boundary point of the smooth worm away from the degenerate annulus:
/// rejection-sampled so `|z1|` stays bounded below and the profile
/// coordinate avoids the transition points of the piecewise profile.
pub fn strongly_pseudoconvex_boundary_point<R: Rng>(
    eta: &EtaProfile,
    rng: &mut R,
) -> PointC2 {
    loop {
        // eta(s) < 1 for |s| < a; stay a little inside so slices exist.
        let s = rng.gen_range(-(eta.a - 0.05)..(eta.a - 0.05));
        if (s.abs() - eta.mu).abs() < 0.05 {
            continue;
        }
        let phi = rng.gen_range(0.0..2.0 * PI);
        let theta = rng.gen_range(0.0..2.0 * PI);
        let p = match boundary_point(eta, s, phi, theta) {
            Ok(p) => p,
            Err(_) => continue,
        };
        if p.z1.norm() > 0.1 {
            return p;
        }
    }
}

/// Interior point of the smooth worm in the band `|log|z2|^2| < 1`, away
/// from the profile transition, where the defining function is smooth
/// enough for high-order finite differences.
pub fn interior_worm_point<R: Rng>(eta: &EtaProfile, rng: &mut R) -> PointC2 {
    loop {
        let s = rng.gen_range(-1.0..1.0);
        let phi = rng.gen_range(0.0..2.0 * PI);
        let theta = rng.gen_range(0.0..2.0 * PI);
        let r = rng.gen_range(0.1..0.9);
        let z1 = Complex64::from_polar(1.0, s) + Complex64::from_polar(r, phi);
        let z2 = Complex64::from_polar((0.5 * s).exp(), theta);
        let p = PointC2::new(z1, z2);
        if crate::domains::rho(eta, &p).map(|v| v < -0.05).unwrap_or(false) {
            return p;
        }
    }
}
