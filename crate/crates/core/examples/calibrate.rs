//! Derivation script for the kernel normalization constant.
//!
//! Fits the constant from the per-mode reproducing identity on the
//! reference configuration and cross-checks it on independent modes and
//! evaluation points. The shipped `kernel::C_NORM` is the exact constant
//! this measurement converges to.
//!
//! Run with: `cargo run --release -p wormkit-core --example calibrate`

use num_complex::Complex64;
use std::f64::consts::PI;
use wormkit_core::analysis::{fit_normalization, fit_normalization_case, TestFunctionSpec};
use wormkit_core::{kernel, DomainParams, DomainVariant, QuadConfig};

fn main() {
    let cfg = QuadConfig::default();
    let params = DomainParams::new(1.5 * PI, DomainVariant::DBetaPrime).unwrap();

    let reference = fit_normalization(&params, &cfg).unwrap();
    println!("reference fit:   c_norm = {:.12}", reference.c_norm);
    println!("shipped constant: C_NORM = {:.12} (= 1/pi)", kernel::C_NORM);
    println!(
        "relative offset: {:.3e}\n",
        (reference.c_norm - kernel::C_NORM).abs() / kernel::C_NORM
    );

    println!("cross-checks on independent (j, z, h) triples:");
    let h = TestFunctionSpec::gaussian_mode(-1, 0.1, Complex64::new(0.0, 0.0)).unwrap();
    let h2 = TestFunctionSpec::gaussian_mode(-1, 0.25, Complex64::new(0.5, 0.0)).unwrap();
    for (j, z, h) in [
        (0, Complex64::new(-0.5, 0.6), &h),
        (1, Complex64::new(0.1, -0.4), &h),
        (-2, Complex64::new(0.0, 0.0), &h2),
        (2, Complex64::new(0.4, 1.0), &h2),
    ] {
        let c = fit_normalization_case(&params, j, h, z, &cfg).unwrap();
        println!(
            "  j = {j:>2}, z = {z}: c_norm = {c:.12}  (pi * c_norm = {:.12})",
            PI * c
        );
    }
}
