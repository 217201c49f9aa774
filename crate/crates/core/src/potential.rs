//! Exhaustion-exponent feasibility.
//!
//! Whether a power `delta` of a defining function can furnish a bounded
//! strictly plurisubharmonic exhaustion of the smooth worm reduces, along
//! the degenerate annulus, to a scalar question: does a smooth strictly
//! positive `g` with `g'' + delta^2 g <= 0` exist on `[-mu, mu]`? By Sturm
//! comparison with the cosine that is possible exactly when
//! `mu * delta < pi / 2`, which places the sharp bound `delta < pi/(2 mu)`
//! on the exponent.

use crate::error::{Error, Result};
use std::f64::consts::FRAC_PI_2;

/// Query: profile half-width `mu` and candidate exponent `delta`.
#[derive(Debug, Clone, Copy)]
pub struct ExhaustionQuery {
    pub mu: f64,
    pub delta: f64,
}

impl ExhaustionQuery {
    pub fn new(mu: f64, delta: f64) -> Result<Self> {
        if !(mu > 0.0) {
            return Err(Error::domain("mu must be positive"));
        }
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::domain("delta must lie in (0, 1]"));
        }
        Ok(ExhaustionQuery { mu, delta })
    }
}

/// Analytic witness descriptors for [`ode_positivity_check`]; derivatives
/// come from the formula, not from differencing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WitnessFn {
    /// `g(s) = cos(k s)`.
    Cosine { k: f64 },
    /// `g(s) = value`.
    Constant { value: f64 },
}

impl WitnessFn {
    pub fn eval(&self, s: f64) -> f64 {
        match self {
            WitnessFn::Cosine { k } => (k * s).cos(),
            WitnessFn::Constant { value } => *value,
        }
    }

    pub fn second_derivative(&self, s: f64) -> f64 {
        match self {
            WitnessFn::Cosine { k } => -k * k * (k * s).cos(),
            WitnessFn::Constant { .. } => 0.0,
        }
    }
}

/// Feasibility of an exhaustion exponent, with a witness when feasible.
#[derive(Debug, Clone, Copy)]
pub struct FeasibilityVerdict {
    pub feasible: bool,
    pub witness: Option<WitnessFn>,
    /// `pi/2 - mu * delta`; positive exactly when feasible.
    pub margin: f64,
}

/// Sharp upper bound `pi / (2 mu)` for the exhaustion exponent.
pub fn df_exponent_bound(mu: f64) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::domain("mu must be positive"));
    }
    Ok(FRAC_PI_2 / mu)
}

/// Decide `mu * delta < pi/2` and, when feasible, return the cosine witness
/// `g(s) = cos(delta s)`, which is strictly positive on `[-mu, mu]` and
/// satisfies `g'' + delta^2 g = 0`. Margin zero counts as infeasible: the
/// threshold inequality is strict.
pub fn exhaustion_feasibility(q: &ExhaustionQuery) -> FeasibilityVerdict {
    let margin = FRAC_PI_2 - q.mu * q.delta;
    let feasible = margin > 0.0;
    FeasibilityVerdict {
        feasible,
        witness: feasible.then_some(WitnessFn::Cosine { k: q.delta }),
        margin,
    }
}

/// Sample `g` on `grid_n` uniform points of `[-mu, mu]` and check strict
/// positivity together with `g'' + delta^2 g <= 1e-12` everywhere.
pub fn ode_positivity_check(delta: f64, mu: f64, g: &WitnessFn, grid_n: usize) -> Result<bool> {
    if grid_n < 100 {
        return Err(Error::config("grid_n must be at least 100"));
    }
    if !(mu > 0.0) || !(delta > 0.0) {
        return Err(Error::config("delta and mu must be positive"));
    }
    for i in 0..grid_n {
        let s = -mu + 2.0 * mu * i as f64 / (grid_n - 1) as f64;
        let value = g.eval(s);
        if !(value > 0.0) {
            return Ok(false);
        }
        if g.second_derivative(s) + delta * delta * value > 1e-12 {
            return Ok(false);
        }
    }
    Ok(true)
}
