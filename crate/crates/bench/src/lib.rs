//! Shared fixtures for the criterion benches.

use num_complex::Complex64;
use wormkit_core::{DomainParams, DomainVariant, PointC2, QuadConfig};

pub fn params_prime() -> DomainParams {
    DomainParams::new(1.5 * std::f64::consts::PI, DomainVariant::DBetaPrime).unwrap()
}

pub fn config() -> QuadConfig {
    QuadConfig::default()
}

pub fn interior_pair() -> (PointC2, PointC2) {
    (
        PointC2::new(Complex64::new(0.2, 0.1), Complex64::new(1.1, 0.0)),
        PointC2::new(Complex64::new(-0.4, 0.3), Complex64::new(0.7, 0.5)),
    )
}
