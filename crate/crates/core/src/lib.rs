//! Numerical toolkit for the Diederich-Fornaess worm domains.
//!
//! The crate computes with four members of the worm family: the smooth
//! bounded worm, its truncated companion, and the two unbounded non-smooth
//! models with half-plane and strip slices. On top of the geometry
//! (defining function, Levi form, the weakly pseudoconvex annulus) it
//! evaluates the Bergman kernels of the non-smooth variants from their
//! explicit mode decomposition and verifies the sharp exponent
//! `nu = pi/(2 beta - pi)` in three guises: kernel decay on the strip
//! model, kernel blowup on the half-plane model, and the L^p boundedness
//! window of the projection. A separate module checks the exhaustion
//! exponent threshold `mu * delta < pi/2` with explicit ODE witnesses.
//!
//! Modules
//! - [`domains`]: variants, membership, defining function, Levi form, grid.
//! - [`modes`]: angular mode weights, their transforms, mode projection.
//! - [`quad`]: line and volume integration engines.
//! - [`kernel`]: per-mode kernels, mode sums, pullback, asymptotic models.
//! - [`analysis`]: reproducing residuals, exponent fits, L^p scans.
//! - [`potential`]: exhaustion-exponent feasibility and ODE witnesses.

// Guards of the form `!(x > 0.0)` are intentional: they reject NaN along
// with the out-of-range values, which `x <= 0.0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod domains;
mod error;
pub mod kernel;
pub mod modes;
pub mod potential;
pub mod quad;

pub use error::{Error, Result};

pub use domains::{
    DomainParams, DomainVariant, EtaProfile, GridNode, PointC2, TangentVector,
};
pub use kernel::{KernelValue, NormCalibration};
pub use quad::{IntegralResult, QuadConfig};

pub use num_complex::Complex64;
