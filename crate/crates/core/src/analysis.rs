//! Verification suite: turns the kernel formulas into numbers.
//!
//! Reproducing-property residuals (per mode on the strip, full kernel on
//! the domain), the L^p boundedness range with divergence-trend scans,
//! decay and blowup exponent fits, rotation-invariance residuals, and
//! boundary singularity scans.

use crate::domains::{contains, DomainParams, DomainVariant, PointC2};
use crate::error::{Error, Result};
use crate::kernel::{self, h_j, kernel_prime, kernel_unprime, NormCalibration};
use crate::modes::WeightProfile;
use crate::quad::QuadConfig;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};

pub mod sampling;

/// Test functions certified square-integrable on the strip-slice worm:
/// a Gaussian in `z1` times an optional pure `z2` power.
#[derive(Debug, Clone, Copy)]
pub struct TestFunctionSpec {
    pub kind: TestFunctionKind,
    pub j: i32,
    pub delta: f64,
    pub center: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFunctionKind {
    /// `exp(-delta (z1 - a)^2) * z2^j`.
    GaussianMode,
    /// `exp(-delta (z1 - a)^2)`.
    PlainGaussian,
}

impl TestFunctionSpec {
    pub fn gaussian_mode(j: i32, delta: f64, center: Complex64) -> Result<Self> {
        if !(delta > 0.0) {
            return Err(Error::config("delta must be positive"));
        }
        Ok(TestFunctionSpec {
            kind: TestFunctionKind::GaussianMode,
            j,
            delta,
            center,
        })
    }

    pub fn plain_gaussian(delta: f64, center: Complex64) -> Result<Self> {
        Ok(TestFunctionSpec {
            kind: TestFunctionKind::PlainGaussian,
            j: 0,
            ..Self::gaussian_mode(0, delta, center)?
        })
    }

    /// The `z1` factor.
    pub fn eval_z1(&self, w: Complex64) -> Complex64 {
        let d = w - self.center;
        (-self.delta * d * d).exp()
    }

    pub fn eval(&self, p: &PointC2) -> Complex64 {
        match self.kind {
            TestFunctionKind::GaussianMode => self.eval_z1(p.z1) * p.z2.powi(self.j),
            TestFunctionKind::PlainGaussian => self.eval_z1(p.z1),
        }
    }

    /// Real interval outside which the `z1` factor is below `eps` on the
    /// strip (up to the bounded `exp(delta y^2)` factor absorbed by pad).
    fn x_window(&self, eps: f64, pad: f64) -> (f64, f64) {
        let r = ((1.0 / eps).ln() / self.delta).sqrt() + pad;
        (self.center.re - r, self.center.re + r)
    }
}

/// Least-squares exponent fit.
#[derive(Debug, Clone, Copy)]
pub struct ExponentFit {
    pub slope: f64,
    pub stderr: f64,
    pub window: (f64, f64),
    pub points: usize,
}

/// Trend classification of an improper-integral scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrendVerdict {
    ConvergentTrend,
    DivergentTrend,
}

/// Partial integrals of a kernel-power scan with the fitted trend.
#[derive(Debug, Clone)]
pub struct LpVerdict {
    pub p: f64,
    /// Cumulative integrals, one per requested radius; nondecreasing.
    pub partial_integrals: Vec<f64>,
    pub verdict: TrendVerdict,
}

/// The closed L^p boundedness window of the half-plane-slice worm's
/// projection.
#[derive(Debug, Clone, Copy)]
pub struct NuBetaRange {
    pub p_min: f64,
    pub p_max: f64,
}

fn ols(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let stderr = if xs.len() > 2 {
        (ss_res / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    (slope, intercept, stderr)
}

/// Quadrature nodes for the weighted strip: x panels covering `[lo, hi]`,
/// y panels split at the weight's breakpoints.
fn strip_nodes(
    weight: &WeightProfile,
    x_lo: f64,
    x_hi: f64,
    cfg: &QuadConfig,
) -> Vec<(Complex64, f64)> {
    let x_order = (cfg.panel_order / 3).max(8);
    let y_order = (cfg.panel_order / 2).max(8);
    let x_rule = crate::quad::gauss_legendre(x_order);
    let y_rule = crate::quad::gauss_legendre(y_order);

    let mut xs: Vec<(f64, f64)> = Vec::new();
    let mut a = x_lo;
    while a < x_hi {
        let b = (a + 2.0).min(x_hi);
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        for (t, w) in x_rule.nodes.iter().zip(&x_rule.weights) {
            xs.push((c + h * t, h * w));
        }
        a = b;
    }

    let (lo, hi) = weight.support();
    let [k0, k1] = weight.kinks();
    let mut cuts = vec![lo, k0, k1, hi];
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let mut ys: Vec<(f64, f64)> = Vec::new();
    for seg in cuts.windows(2) {
        let c = 0.5 * (seg[0] + seg[1]);
        let h = 0.5 * (seg[1] - seg[0]);
        for (t, w) in y_rule.nodes.iter().zip(&y_rule.weights) {
            ys.push((c + h * t, h * w));
        }
    }

    let mut nodes = Vec::with_capacity(xs.len() * ys.len());
    for &(y, wy) in &ys {
        let lam = weight.lambda(y);
        if lam == 0.0 {
            continue;
        }
        for &(x, wx) in &xs {
            nodes.push((Complex64::new(x, y), wx * wy * lam));
        }
    }
    nodes
}

/// Raw strip integral of `h_j(z, w) h(w) lambda_j(Im w)` over the strip,
/// without any normalization constant.
fn mode_reproducing_integral(
    params: &DomainParams,
    j: i32,
    h: &TestFunctionSpec,
    z: Complex64,
    cfg: &QuadConfig,
) -> Result<Complex64> {
    let weight = WeightProfile::new(params.beta, j)?;
    let (x_lo, x_hi) = h.x_window(1e-12, 2.0);
    let nodes = strip_nodes(&weight, x_lo, x_hi, cfg);
    let contributions: Vec<Result<Complex64>> = nodes
        .par_iter()
        .map(|&(w1, wt)| Ok(h_j(params, j, z, w1, cfg)?.value * h.eval_z1(w1) * wt))
        .collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for c in contributions {
        acc += c?;
    }
    Ok(acc)
}

/// Relative residual of the per-mode reproducing identity at `z`:
/// the normalized strip integral against the mode weight must return
/// `h(z)`. The weighted measure carries the volume factor of the angular
/// reduction, so a single global constant serves every mode.
pub fn reproducing_residual_mode(
    params: &DomainParams,
    j: i32,
    h: &TestFunctionSpec,
    z: Complex64,
    cfg: &QuadConfig,
) -> Result<f64> {
    cfg.validate()?;
    if z.im.abs() >= params.beta {
        return Err(Error::domain("evaluation point outside the strip"));
    }
    let hz = h.eval_z1(z);
    let raw = mode_reproducing_integral(params, j, h, z, cfg)?;
    let projected = PI * kernel::C_NORM * raw;
    Ok((projected - hz).norm() / hz.norm().max(1.0))
}

/// Fit the normalization constant from one reproducing identity.
pub fn fit_normalization_case(
    params: &DomainParams,
    j: i32,
    h: &TestFunctionSpec,
    z: Complex64,
    cfg: &QuadConfig,
) -> Result<f64> {
    let hz = h.eval_z1(z);
    let raw = mode_reproducing_integral(params, j, h, z, cfg)?;
    Ok((hz / (PI * raw)).re)
}

/// Measure the normalization constant on the reference configuration
/// (lowest mode, centered Gaussian) of the supplied parameter set.
pub fn fit_normalization(params: &DomainParams, cfg: &QuadConfig) -> Result<NormCalibration> {
    let h = TestFunctionSpec::gaussian_mode(-1, 0.1, Complex64::new(0.0, 0.0))?;
    let z = Complex64::new(0.3, 0.2);
    let c_norm = fit_normalization_case(params, -1, &h, z, cfg)?;
    Ok(NormCalibration { c_norm })
}

/// Relative residual of the full reproducing identity on the strip-slice
/// worm: integrate `K(z, .) f` over the four-coordinate grid and compare
/// with `f(z)`.
pub fn reproducing_residual_full(
    params: &DomainParams,
    f: &TestFunctionSpec,
    z: &PointC2,
    cfg: &QuadConfig,
) -> Result<f64> {
    cfg.validate()?;
    let prime = params.with_variant(DomainVariant::DBetaPrime);
    if !contains(&prime, None, z)? {
        return Err(Error::domain("evaluation point outside the domain"));
    }
    let fz = f.eval(z);

    let x_order = (cfg.panel_order / 3).max(8);
    let us_order = (cfg.panel_order / 4).max(8);
    let x_rule = crate::quad::gauss_legendre(x_order);
    let us_rule = crate::quad::gauss_legendre(us_order);
    let (x_lo, x_hi) = f.x_window(1e-10, 2.0);

    let mut xs: Vec<(f64, f64)> = Vec::new();
    let mut a = x_lo;
    while a < x_hi {
        let b = (a + 2.0).min(x_hi);
        let c = 0.5 * (a + b);
        let hw = 0.5 * (b - a);
        for (t, w) in x_rule.nodes.iter().zip(&x_rule.weights) {
            xs.push((c + hw * t, hw * w));
        }
        a = b;
    }
    let mut us: Vec<(f64, f64)> = Vec::new();
    {
        let h = FRAC_PI_2;
        for (t, w) in us_rule.nodes.iter().zip(&us_rule.weights) {
            us.push((h * t, h * w));
        }
    }
    let mut ss: Vec<(f64, f64)> = Vec::new();
    {
        let h = prime.mu;
        for (t, w) in us_rule.nodes.iter().zip(&us_rule.weights) {
            ss.push((h * t, h * w));
        }
    }

    const N_THETA: usize = 64;
    let theta_w = 2.0 * PI / N_THETA as f64;

    // Parallel over x; the theta sum reuses the mode terms computed once
    // per (x, u, s) node at theta = 0, rotating each term by exp(-i j
    // theta). The stopping rule only sees term magnitudes, which are theta
    // independent, so this matches evaluating the kernel at every theta
    // node directly.
    let partials: Vec<Result<Complex64>> = xs
        .par_iter()
        .map(|&(x, wx)| {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(s, ws) in &ss {
                let r = (0.5 * s).exp();
                let vol_s = 0.5 * s.exp() * ws;
                for &(u, wu) in &us {
                    let w1 = Complex64::new(x, s + u);
                    let w_base = PointC2::new(w1, Complex64::new(r, 0.0));
                    let terms = kernel::mode_terms(&prime, z, &w_base, cfg)?;
                    let g = f.eval_z1(w1);
                    let mut node_sum = Complex64::new(0.0, 0.0);
                    for k in 0..N_THETA {
                        let theta = 2.0 * PI * k as f64 / N_THETA as f64;
                        let mut kv = Complex64::new(0.0, 0.0);
                        for t in &terms.terms {
                            kv += t.term * Complex64::from_polar(1.0, -(t.j as f64) * theta);
                        }
                        let f_val = match f.kind {
                            TestFunctionKind::GaussianMode => {
                                g * Complex64::from_polar(r, theta).powi(f.j)
                            }
                            TestFunctionKind::PlainGaussian => g,
                        };
                        node_sum += kernel::C_NORM * kv * f_val * theta_w;
                    }
                    acc += node_sum * wx * wu * vol_s;
                }
            }
            Ok(acc)
        })
        .collect();

    let mut integral = Complex64::new(0.0, 0.0);
    for p in partials {
        integral += p?;
    }
    Ok((integral - fz).norm() / fz.norm().max(1.0))
}

/// Closed-form L^p boundedness window; requires `beta > pi` so the sharp
/// exponent is below one.
pub fn lp_bounded_range(params: &DomainParams) -> Result<NuBetaRange> {
    if params.beta <= PI {
        return Err(Error::domain(
            "nu >= 1 for beta <= pi: no bounded range below 2 is defined",
        ));
    }
    Ok(NuBetaRange {
        p_min: 2.0 / (1.0 + params.nu),
        p_max: 2.0 / (1.0 - params.nu),
    })
}

/// Shell region around the reference point used by the divergence scans:
/// the points at distance `[1/4, 1/2]` from the spiral center associated
/// with the kernel's singular factors.
struct ShellBand {
    t_nodes: Vec<(f64, f64)>, // (tau = ln t, weight)
    n_phi: usize,
    rho_nodes: Vec<(f64, f64)>,
    n_alpha: usize,
}

fn shell_band(t_lo: f64, t_hi: f64) -> ShellBand {
    let t_rule = crate::quad::gauss_legendre(4);
    let (a, b) = (t_lo.ln(), t_hi.ln());
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let t_nodes = t_rule
        .nodes
        .iter()
        .zip(&t_rule.weights)
        .map(|(t, w)| (c + h * t, h * w))
        .collect();
    let r_rule = crate::quad::gauss_legendre(2);
    let rho_nodes = r_rule
        .nodes
        .iter()
        .zip(&r_rule.weights)
        .map(|(t, w)| (0.375 + 0.125 * t, 0.125 * w))
        .collect();
    ShellBand {
        t_nodes,
        n_phi: 12,
        rho_nodes,
        n_alpha: 10,
    }
}

/// Integral of `|K(omega, zeta)|^p` over one shell band. `inner` selects
/// the side: `true` scans `|omega1| in (t_lo, t_hi)` below `|zeta1|`,
/// `false` the reflected band above it.
fn band_integral(
    params: &DomainParams,
    p: f64,
    zeta: &PointC2,
    t_lo: f64,
    t_hi: f64,
    inner: bool,
    cfg: &QuadConfig,
) -> Result<f64> {
    let band = shell_band(t_lo, t_hi);
    let l_zeta = kernel::log_branch(params, zeta)?;
    let mut nodes: Vec<(PointC2, f64)> = Vec::new();
    for &(tau, wt) in &band.t_nodes {
        let t = tau.exp();
        for kphi in 0..band.n_phi {
            let phi = 2.0 * PI * kphi as f64 / band.n_phi as f64;
            let w_phi = 2.0 * PI / band.n_phi as f64;
            let omega1 = Complex64::from_polar(t, phi);
            // Spiral center of the singular factor for this side.
            let log_ratio = if inner {
                l_zeta - Complex64::new(t.ln(), -phi)
            } else {
                Complex64::new(t.ln(), phi) - l_zeta.conj()
            };
            let center = (FRAC_PI_2 + Complex64::i() * 0.5 * log_ratio).exp();
            for &(rho, w_rho) in &band.rho_nodes {
                for ka in 0..band.n_alpha {
                    let alpha = 2.0 * PI * ka as f64 / band.n_alpha as f64;
                    let w_alpha = 2.0 * PI / band.n_alpha as f64;
                    let ring = center - Complex64::from_polar(rho, alpha);
                    let omega2 = if inner {
                        (ring / zeta.z2).conj()
                    } else {
                        ring / zeta.z2.conj()
                    };
                    if omega2 == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let omega = PointC2::new(omega1, omega2);
                    let l = omega2.norm_sqr().ln();
                    if l.abs() >= params.mu {
                        continue;
                    }
                    if kernel::log_branch(params, &omega).is_err() {
                        continue;
                    }
                    // dA(omega1) dA(omega2) = t^2 dtau dphi * rho drho
                    // dalpha / |zeta2|^2.
                    let weight =
                        wt * t * t * w_phi * w_rho * rho * w_alpha / zeta.z2.norm_sqr();
                    nodes.push((omega, weight));
                }
            }
        }
    }
    let vals: Vec<Result<f64>> = nodes
        .par_iter()
        .map(|(omega, weight)| {
            let k = kernel_unprime(params, omega, zeta, cfg)?;
            Ok(weight * k.value.norm().powf(p))
        })
        .collect();
    let mut acc = 0.0;
    for v in vals {
        acc += v?;
    }
    Ok(acc)
}

/// Scan the L^p mass of the kernel against the space's boundary.
///
/// For each radius `r_k` the partial integral accumulates
/// `|K(., zeta)|^p` over the singular shells with `|omega1|` between `r_k`
/// and `|zeta1|` together with the reflected shells reaching out to
/// `|zeta1|^2 / r_k`, so both the blowup end (`omega1 -> 0`) and the decay
/// end (`|omega1| -> inf`) of the unbounded domain are probed. The verdict
/// regresses the logarithmic increments of both sides against `log r` and
/// reports a divergent trend when either slope falls at or below the dead
/// band of +-0.05 around zero.
pub fn lp_blowup_scan(
    params: &DomainParams,
    p: f64,
    zeta: &PointC2,
    radii: &[f64],
    cfg: &QuadConfig,
) -> Result<LpVerdict> {
    cfg.validate()?;
    if !(p > 1.0) {
        return Err(Error::config("p must exceed 1"));
    }
    if radii.len() < 5 {
        return Err(Error::config("need at least five radii for a trend"));
    }
    let z1_abs = zeta.z1.norm();
    if radii.windows(2).any(|w| w[1] >= w[0]) || radii[0] >= z1_abs || radii[radii.len() - 1] <= 0.0
    {
        return Err(Error::config(
            "radii must decrease strictly from below |zeta1| toward 0",
        ));
    }
    kernel::log_branch(params, zeta)?;

    let mut inner_inc = Vec::with_capacity(radii.len());
    let mut outer_inc = Vec::with_capacity(radii.len());
    let mut bounds = vec![z1_abs];
    bounds.extend_from_slice(radii);
    for k in 0..radii.len() {
        let (hi, lo) = (bounds[k], bounds[k + 1]);
        inner_inc.push(band_integral(params, p, zeta, lo, hi, true, cfg)?);
        // Reflected band: |omega1| in (z^2/hi, z^2/lo).
        let (rlo, rhi) = (z1_abs * z1_abs / hi, z1_abs * z1_abs / lo);
        outer_inc.push(band_integral(params, p, zeta, rlo, rhi, false, cfg)?);
    }

    let mut partial_integrals = Vec::with_capacity(radii.len());
    let mut acc = 0.0;
    for k in 0..radii.len() {
        acc += inner_inc[k] + outer_inc[k];
        partial_integrals.push(acc);
    }

    let log_r: Vec<f64> = (0..radii.len())
        .map(|k| (bounds[k] * bounds[k + 1]).sqrt().ln())
        .collect();
    // The first band starts at |zeta1| where the kernel is still in its
    // bounded-part crossover; the trend regression uses the later bands.
    let fit_side = |incs: &[f64]| -> f64 {
        let pts: Vec<(f64, f64)> = log_r
            .iter()
            .zip(incs)
            .skip(1)
            .filter(|(_, &v)| v > 0.0)
            .map(|(&x, &v)| (x, v.ln()))
            .collect();
        if pts.len() < 3 {
            // Nothing measurable on this side: treat as convergent.
            return 1.0;
        }
        let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
        ols(&xs, &ys).0
    };
    let slope_inner = fit_side(&inner_inc);
    let slope_outer = fit_side(&outer_inc);

    const DEAD_BAND: f64 = 0.05;
    let verdict = if slope_inner <= DEAD_BAND || slope_outer <= DEAD_BAND {
        TrendVerdict::DivergentTrend
    } else {
        TrendVerdict::ConvergentTrend
    };
    Ok(LpVerdict {
        p,
        partial_integrals,
        verdict,
    })
}

/// Fit the exponential decay rate of the lowest-mode strip kernel along the
/// real axis: least-squares slope of `log |h_j(x, 0)|` over the window.
pub fn decay_exponent_fit(
    params: &DomainParams,
    j: i32,
    x_window: (f64, f64),
    n_points: usize,
    cfg: &QuadConfig,
) -> Result<ExponentFit> {
    if n_points < 8 {
        return Err(Error::config("decay fit needs at least 8 sample points"));
    }
    if !(x_window.1 > x_window.0) {
        return Err(Error::config("empty fit window"));
    }
    let xs: Vec<f64> = (0..n_points)
        .map(|k| x_window.0 + (x_window.1 - x_window.0) * k as f64 / (n_points - 1) as f64)
        .collect();
    let ys: Vec<Result<f64>> = xs
        .par_iter()
        .map(|&x| {
            let v = h_j(params, j, Complex64::new(x, 0.0), Complex64::new(0.0, 0.0), cfg)?;
            Ok(v.value.norm().ln())
        })
        .collect();
    let mut ln_vals = Vec::with_capacity(n_points);
    for y in ys {
        ln_vals.push(y?);
    }
    let (slope, _, stderr) = ols(&xs, &ln_vals);
    let fit = ExponentFit {
        slope,
        stderr,
        window: x_window,
        points: n_points,
    };
    if stderr > 0.1 * slope.abs() {
        return Err(Error::Accuracy {
            message: format!("decay fit stderr {stderr:.3e} exceeds 10% of slope {slope:.4}"),
            value: Complex64::new(slope, 0.0),
            err_estimate: stderr,
            evaluations: n_points as u64,
        });
    }
    Ok(fit)
}

/// Fit the power-law blowup of the half-plane-slice kernel along the path
/// `omega = (t e^{i log|omega2|^2}, omega2)`, `t` from `t_seq` (decreasing
/// toward 0): slope of `log |K(zeta, omega)|` against `log t`.
pub fn blowup_exponent_fit(
    params: &DomainParams,
    zeta: &PointC2,
    omega2: Complex64,
    t_seq: &[f64],
    cfg: &QuadConfig,
) -> Result<ExponentFit> {
    if t_seq.len() < 5 {
        return Err(Error::config("blowup fit needs at least 5 sample points"));
    }
    let l = omega2.norm_sqr().ln();
    let ys: Vec<Result<(f64, f64)>> = t_seq
        .par_iter()
        .map(|&t| {
            let omega = PointC2::new(Complex64::from_polar(t, l), omega2);
            let k = kernel_unprime(params, zeta, &omega, cfg)?;
            Ok((t.ln(), k.value.norm().ln()))
        })
        .collect();
    let mut xs = Vec::new();
    let mut vals = Vec::new();
    for y in ys {
        let (x, v) = y?;
        xs.push(x);
        vals.push(v);
    }
    let (slope, _, stderr) = ols(&xs, &vals);
    let fit = ExponentFit {
        slope,
        stderr,
        window: (*t_seq.last().unwrap(), t_seq[0]),
        points: t_seq.len(),
    };
    if stderr > 0.1 * slope.abs() {
        return Err(Error::Accuracy {
            message: format!("blowup fit stderr {stderr:.3e} exceeds 10% of slope {slope:.4}"),
            value: Complex64::new(slope, 0.0),
            err_estimate: stderr,
            evaluations: t_seq.len() as u64,
        });
    }
    Ok(fit)
}

/// `|K'(R_theta z, R_theta w) - K'(z, w)|` for the rotation
/// `R_theta (z1, z2) = (z1, e^{i theta} z2)`.
pub fn rotation_invariance_residual(
    params: &DomainParams,
    z: &PointC2,
    w: &PointC2,
    theta: f64,
    cfg: &QuadConfig,
) -> Result<f64> {
    let rot = |p: &PointC2| PointC2::new(p.z1, p.z2 * Complex64::from_polar(1.0, theta));
    let a = kernel_prime(params, z, w, cfg)?;
    let b = kernel_prime(params, &rot(z), &rot(w), cfg)?;
    Ok((a.value - b.value).norm())
}

/// One row of a boundary-singularity scan.
#[derive(Debug, Clone, Copy)]
pub struct ScanRow {
    pub t: f64,
    pub magnitude: f64,
    pub err: f64,
}

/// Magnitudes of `K(zeta, (t e^{i log|omega2|^2}, omega2))` along a grid of
/// radii `t`; the table grows without bound as `t` decreases.
pub fn singularity_scan(
    params: &DomainParams,
    zeta: &PointC2,
    omega2: Complex64,
    t_grid: &[f64],
    cfg: &QuadConfig,
) -> Result<Vec<ScanRow>> {
    if omega2 == Complex64::new(0.0, 0.0) {
        return Err(Error::domain("omega2 must be nonzero"));
    }
    let l = omega2.norm_sqr().ln();
    if l.abs() >= params.mu {
        return Err(Error::domain(
            "omega2 outside the admissible annulus of the domain",
        ));
    }
    let rows: Vec<Result<ScanRow>> = t_grid
        .par_iter()
        .map(|&t| {
            let omega = PointC2::new(Complex64::from_polar(t, l), omega2);
            let k = kernel_unprime(params, zeta, &omega, cfg)?;
            Ok(ScanRow {
                t,
                magnitude: k.value.norm(),
                err: k.err_estimate,
            })
        })
        .collect();
    rows.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beta32(variant: DomainVariant) -> DomainParams {
        DomainParams::new(1.5 * PI, variant).unwrap()
    }

    #[test]
    fn lp_range_values() {
        let r = lp_bounded_range(&beta32(DomainVariant::DBeta)).unwrap();
        assert_eq!(r.p_min, 2.0 / 1.5);
        assert_eq!(r.p_max, 4.0);
        // Conjugate identity 1/p_min + 1/p_max = 1.
        assert!((1.0 / r.p_min + 1.0 / r.p_max - 1.0).abs() < 4.0 * f64::EPSILON);
        // beta -> infinity shrinks the range toward {2} monotonically.
        let mut lo_prev = 0.0;
        let mut hi_prev = f64::INFINITY;
        for beta in [1.1 * PI, 1.5 * PI, 3.0 * PI, 20.0 * PI] {
            let r = lp_bounded_range(&DomainParams::new(beta, DomainVariant::DBeta).unwrap())
                .unwrap();
            assert!(r.p_min > lo_prev && r.p_min < 2.0);
            assert!(r.p_max < hi_prev && r.p_max > 2.0);
            lo_prev = r.p_min;
            hi_prev = r.p_max;
        }
        // beta <= pi rejected.
        assert!(lp_bounded_range(&DomainParams::new(PI, DomainVariant::DBeta).unwrap()).is_err());
    }

    #[test]
    fn trivial_reproducing_residual_zero_function() {
        // h = 0 gives residual 0 exactly: the integrand vanishes.
        let params = beta32(DomainVariant::DBetaPrime);
        let cfg = QuadConfig::default();
        let h = TestFunctionSpec::gaussian_mode(-1, 0.1, Complex64::new(0.0, 0.0)).unwrap();
        // Evaluate far outside the Gaussian's support: h(z) ~ 0, and the
        // residual is normalized by max(1, |h|).
        let z = Complex64::new(60.0, 0.0);
        let r = reproducing_residual_mode(&params, -1, &h, z, &cfg).unwrap();
        assert!(r < 1e-6, "residual {r}");
    }

    #[test]
    fn ols_recovers_line() {
        let xs: Vec<f64> = (0..10).map(|k| k as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 - 2.0 * x).collect();
        let (slope, intercept, stderr) = ols(&xs, &ys);
        assert!((slope + 2.0).abs() < 1e-12);
        assert!((intercept - 3.0).abs() < 1e-12);
        assert!(stderr < 1e-12);
    }

    #[test]
    fn singularity_scan_rejects_bad_omega2() {
        let params = beta32(DomainVariant::DBeta);
        let cfg = QuadConfig::default();
        let zeta = PointC2::new(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
        let omega2 = Complex64::new((params.mu / 2.0 + 0.1).exp(), 0.0);
        assert!(matches!(
            singularity_scan(&params, &zeta, omega2, &[0.1, 0.01], &cfg),
            Err(Error::Domain(_))
        ));
    }
}
