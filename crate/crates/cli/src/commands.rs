//! Subcommand definitions and runners.

use crate::output::{Format, RunOutput, Value};
use crate::parse::{parse_angle, parse_complex, parse_point, parse_window};
use clap::{Args, Subcommand};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::f64::consts::PI;
use std::path::PathBuf;
use wormkit_core::analysis::{
    self, sampling, TestFunctionSpec, TrendVerdict,
};
use wormkit_core::domains::{
    annulus_contains, complex_tangent, domain_quadrature_grid, levi_form, EtaProfile, PointC2,
};
use wormkit_core::kernel::{h_j, kernel_prime, kernel_unprime};
use wormkit_core::modes::WeightProfile;
use wormkit_core::potential::{
    df_exponent_bound, exhaustion_feasibility, ode_positivity_check, ExhaustionQuery, WitnessFn,
};
use wormkit_core::{DomainParams, DomainVariant, QuadConfig, Result};

#[derive(Args, Debug, Clone)]
pub struct CommonOpts {
    /// Winding parameter: decimal radians or a "k*pi" literal.
    #[arg(long, value_parser = parse_angle, default_value = "1.5*pi", global = true)]
    pub beta: f64,
    /// Output file; results go to stdout as a summary when omitted.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Output file format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for every randomized sample in the run.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-8, global = true)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 1e-12, global = true)]
    pub abs_tol: f64,
    #[arg(long, default_value_t = 32, global = true)]
    pub panel_order: u32,
    #[arg(long, default_value_t = 60, global = true)]
    pub mode_cap: i32,
    /// Hard truncation radius for line integrals and grids (auto if unset).
    #[arg(long, global = true)]
    pub line_truncation: Option<f64>,
    #[arg(long, default_value_t = 1e-4, global = true)]
    pub volume_tol: f64,
}

impl CommonOpts {
    pub fn quad(&self) -> QuadConfig {
        QuadConfig {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            panel_order: self.panel_order,
            line_truncation: self.line_truncation,
            mode_cap: self.mode_cap,
            volume_tol: self.volume_tol,
            seed: self.seed,
        }
    }

    pub fn params(&self, variant: DomainVariant) -> Result<DomainParams> {
        DomainParams::new(self.beta, variant)
    }

    pub fn manifest_config(&self) -> serde_json::Value {
        json!({
            "beta": self.beta,
            "seed": self.seed,
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
            "panel_order": self.panel_order,
            "mode_cap": self.mode_cap,
            "line_truncation": self.line_truncation,
            "volume_tol": self.volume_tol,
        })
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the Bergman kernel at a pair of points.
    KernelEval(KernelEvalArgs),
    /// Tabulate one angular-mode strip kernel along a real segment.
    ModeKernel(ModeKernelArgs),
    /// Tabulate the mode weight and its transform.
    Weight(WeightArgs),
    /// Reproducing-property residual (per mode or full kernel).
    ReproTest(ReproTestArgs),
    /// Closed-form L^p boundedness window of the projection.
    LpRange(LpRangeArgs),
    /// Divergence-trend scan of the kernel's L^p mass.
    LpScan(LpScanArgs),
    /// Fit the exponential decay rate of a mode kernel.
    DecayFit(DecayFitArgs),
    /// Fit the kernel blowup power toward the singular boundary ray.
    BlowupFit(BlowupFitArgs),
    /// Rotation-invariance residuals on random pairs.
    RotationCheck(RotationCheckArgs),
    /// Kernel magnitudes along a ray into the singular boundary set.
    SingularityScan(SingularityScanArgs),
    /// Boundary classification table with tangential Levi values.
    Levi(LeviArgs),
    /// Exhaustion-exponent feasibility verdict.
    Exhaustion(ExhaustionArgs),
    /// Dump the tensor quadrature grid.
    GridDump(GridDumpArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::KernelEval(_) => "kernel-eval",
            Command::ModeKernel(_) => "mode-kernel",
            Command::Weight(_) => "weight",
            Command::ReproTest(_) => "repro-test",
            Command::LpRange(_) => "lp-range",
            Command::LpScan(_) => "lp-scan",
            Command::DecayFit(_) => "decay-fit",
            Command::BlowupFit(_) => "blowup-fit",
            Command::RotationCheck(_) => "rotation-check",
            Command::SingularityScan(_) => "singularity-scan",
            Command::Levi(_) => "levi",
            Command::Exhaustion(_) => "exhaustion",
            Command::GridDump(_) => "grid-dump",
        }
    }

    pub fn common(&self) -> &CommonOpts {
        match self {
            Command::KernelEval(a) => &a.common,
            Command::ModeKernel(a) => &a.common,
            Command::Weight(a) => &a.common,
            Command::ReproTest(a) => &a.common,
            Command::LpRange(a) => &a.common,
            Command::LpScan(a) => &a.common,
            Command::DecayFit(a) => &a.common,
            Command::BlowupFit(a) => &a.common,
            Command::RotationCheck(a) => &a.common,
            Command::SingularityScan(a) => &a.common,
            Command::Levi(a) => &a.common,
            Command::Exhaustion(a) => &a.common,
            Command::GridDump(a) => &a.common,
        }
    }

    pub fn run(&self) -> Result<RunOutput> {
        match self {
            Command::KernelEval(a) => kernel_eval(a),
            Command::ModeKernel(a) => mode_kernel(a),
            Command::Weight(a) => weight(a),
            Command::ReproTest(a) => repro_test(a),
            Command::LpRange(a) => lp_range(a),
            Command::LpScan(a) => lp_scan(a),
            Command::DecayFit(a) => decay_fit(a),
            Command::BlowupFit(a) => blowup_fit(a),
            Command::RotationCheck(a) => rotation_check(a),
            Command::SingularityScan(a) => singularity_scan(a),
            Command::Levi(a) => levi(a),
            Command::Exhaustion(a) => exhaustion(a),
            Command::GridDump(a) => grid_dump(a),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DomainChoice {
    /// Strip-slice model (z-coordinates).
    Prime,
    /// Half-plane-slice model (zeta-coordinates).
    Unprime,
}

#[derive(Args, Debug)]
pub struct KernelEvalArgs {
    #[command(flatten)]
    pub common: CommonOpts,
    /// First point "z1,z2".
    #[arg(long, value_parser = parse_point)]
    pub z: (Complex64, Complex64),
    /// Second point "w1,w2".
    #[arg(long, value_parser = parse_point)]
    pub w: (Complex64, Complex64),
    #[arg(long, value_enum, default_value_t = DomainChoice::Prime)]
    pub domain: DomainChoice,
}

fn kernel_eval(a: &KernelEvalArgs) -> Result<RunOutput> {
    let cfg = a.common.quad();
    let z = PointC2::new(a.z.0, a.z.1);
    let w = PointC2::new(a.w.0, a.w.1);
    let kv = match a.domain {
        DomainChoice::Prime => {
            let params = a.common.params(DomainVariant::DBetaPrime)?;
            kernel_prime(&params, &z, &w, &cfg)?
        }
        DomainChoice::Unprime => {
            let params = a.common.params(DomainVariant::DBeta)?;
            kernel_unprime(&params, &z, &w, &cfg)?
        }
    };
    let mut out = RunOutput::default();
    out.scalar("value", Value::Complex(kv.value));
    out.scalar("err_estimate", Value::Real(kv.err_estimate));
    out.scalar("modes_lo", Value::Int(kv.modes_used.0 as i64));
    out.scalar("modes_hi", Value::Int(kv.modes_used.1 as i64));
    Ok(out)
}

#[derive(Args, Debug)]
pub struct ModeKernelArgs {
    #[command(flatten)]
    pub common: CommonOpts,
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    pub j: i32,
    /// Fixed second argument.
    #[arg(long, value_parser = parse_complex, default_value = "0")]
    pub w1: Complex64,
    /// Imaginary part of the moving first argument.
    #[arg(long, default_value_t = 0.0)]
    pub imag: f64,
    #[arg(long, default_value_t = 0.0)]
    pub x_from: f64,
    #[arg(long, default_value_t = 20.0)]
    pub x_to: f64,
    #[arg(long, default_value_t = 21)]
    pub points: usize,
}

fn mode_kernel(a: &ModeKernelArgs) -> Result<RunOutput> {
    let params = a.common.params(DomainVariant::DBetaPrime)?;
    let cfg = a.common.quad();
    let mut out = RunOutput::default();
    out.table(&["x", "value", "err_estimate"]);
    for k in 0..a.points {
        let x = if a.points == 1 {
            a.x_from
        } else {
            a.x_from + (a.x_to - a.x_from) * k as f64 / (a.points - 1) as f64
        };
        let kv = h_j(&params, a.j, Complex64::new(x, a.imag), a.w1, &cfg)?;
        out.row(vec![
            Value::Real(x),
            Value::Complex(kv.value),
            Value::Real(kv.err_estimate),
        ]);
    }
    out.scalar("j", Value::Int(a.j as i64));
    Ok(out)
}

#[derive(Args, Debug)]
pub struct WeightArgs {
    #[command(flatten)]
    pub common: CommonOpts,
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    pub j: i32,
    #[arg(long, default_value_t = 81)]
    pub y_points: usize,
    #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
    pub xi_from: f64,
    #[arg(long, default_value_t = 10.0)]
    pub xi_to: f64,
    #[arg(long, default_value_t = 81)]
    pub xi_points: usize,
}

fn weight(a: &WeightArgs) -> Result<RunOutput> {
    let w = WeightProfile::new(a.common.beta, a.j)?;
    let mut out = RunOutput::default();
    out.table(&["kind", "arg", "value"]);
    let (lo, hi) = w.support();
    for k in 0..a.y_points {
        let y = lo + (hi - lo) * k as f64 / (a.y_points - 1) as f64;
        out.row(vec![
            Value::Text("lambda".into()),
            Value::Real(y),
            Value::Real(w.lambda(y)),
        ]);
    }
    for k in 0..a.xi_points {
        let xi = a.xi_from + (a.xi_to - a.xi_from) * k as f64 / (a.xi_points - 1) as f64;
        out.row(vec![
            Value::Text("lambda_hat".into()),
            Value::Real(xi),
            Value::Real(w.lambda_hat(xi)),
        ]);
    }
    out.scalar("j", Value::Int(a.j as i64));
    Ok(out)
}

#[derive(Args, Debug)]
pub struct ReproTestArgs {
    #[command(flatten)]
    pub common: CommonOpts,
    /// Test the full kernel on the domain instead of one mode on the strip.
    #[arg(long)]
    pub full: bool,
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    pub j: i32,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, value_parser = parse_complex, default_value = "0")]
    pub center: Complex64,
    /// Evaluation point (z1 component).
    #[arg(long, value_parser = parse_complex, default_value = "0.3+0.2i")]
    pub z: Complex64,
    /// z2 component for the full test.
    #[arg(long, value_parser = parse_complex, default_value = "1.1")]
    pub z2: Complex64,
}

fn repro_test(a: &ReproTestArgs) -> Result<RunOutput> {
    let params = a.common.params(DomainVariant::DBetaPrime)?;
    let cfg = a.common.quad();
    let f = TestFunctionSpec::gaussian_mode(a.j, a.delta, a.center)?;
    let residual = if a.full {
        let z = PointC2::new(a.z, a.z2);
        analysis::reproducing_residual_full(&params, &f, &z, &cfg)?
    } else {
        analysis::reproducing_residual_mode(&params, a.j, &f, a.z, &cfg)?
    };
    let mut out = RunOutput::default();
    out.scalar("residual", Value::Real(residual));
    out.scalar("j", Value::Int(a.j as i64));
    out.scalar("full", Value::Text(a.full.to_string()));
    Ok(out)
}

#[derive(Args, Debug)]
pub struct LpRangeArgs {
    #[command(flatten)]
    pub common: CommonOpts,
}

fn lp_range(a: &LpRangeArgs) -> Result<RunOutput> {
    let params = a.common.params(DomainVariant::DBeta)?;
    let range = analysis::lp_bounded_range(&params)?;
    let mut out = RunOutput::default();
    out.scalar("nu", Value::Real(params.nu));
    out.scalar("p_min", Value::Real(range.p_min));
    out.scalar("p_max", Value::Real(range.p_max));
    Ok(out)
}

#[derive(Args, Debug)]
pub struct LpScanArgs {
    #[command(flatten)]
    pub common: CommonOpts,
    #[arg(long)]
    pub p: f64,
    #[arg(long, value_parser = parse_point, default_value = "1,1")]
    pub zeta: (Complex64, Complex64),
    /// Number of period-locked radii (spaced 4 pi apart in ln r).
    #[arg(long, default_value_t = 5)]
    pub bands: usize,
}

fn lp_scan(a: &LpScanArgs) -> Result<RunOutput> {
    let params = a.common.params(DomainVariant::DBeta)?;
    let cfg = a.common.quad();
    let zeta = PointC2::new(a.zeta.0, a.zeta.1);
    let z1_abs = zeta.z1.norm();
    let radii: Vec<f64> = (1..=a.bands)
        .map(|k| z1_abs * (-4.0 * PI * k as f64).exp())
        .collect();
    let verdict = analysis::lp_blowup_scan(&params, a.p, &zeta, &radii, &cfg)?;
    let mut out = RunOutput::default();
    out.table(&["radius", "partial_integral"]);
    for (r, v) in radii.iter().zip(&verdict.partial_integrals) {
        out.row(vec![Value::Real(*r), Value::Real(*v)]);
    }
    out.scalar("p", Value::Real(a.p));
    out.scalar(
        "verdict",
        Value::Text(
            match verdict.verdict {
                TrendVerdict::ConvergentTrend => "convergent",
                TrendVerdict::DivergentTrend => "divergent",
            }
            .into(),
        ),
    );
    Ok(out)
}

#[derive(Args, Debug)]
pub struct DecayFitArgs {
    #[command(flatten)]
    pub common: CommonOpts,
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    pub j: i32,
    /// Fit window "lo,hi" on the real axis.
    #[arg(long, value_parser = parse_window, default_value = "15,35")]
    pub window: (f64, f64),
    #[arg(long, default_value_t = 9)]
    pub points: usize,
}

fn decay_fit(a: &DecayFitArgs) -> Result<RunOutput> {
    let params = a.common.params(DomainVariant::DBetaPrime)?;
    let cfg = a.common.quad();
    let fit = analysis::decay_exponent_fit(&params, a.j, a.window, a.points, &cfg)?;
    let mut out = RunOutput::default();
    out.scalar("slope", Value::Real(fit.slope));
    out.scalar("stderr", Value::Real(fit.stderr));
    out.scalar("expected", Value::Real(-params.nu));
    out.scalar("points", Value::Int(fit.points as i64));
    Ok(out)
}

#[derive(Args, Debug)]
pub struct BlowupFitArgs {
    #[command(flatten)]
    pub common: CommonOpts,
    #[arg(long, value_parser = parse_point, default_value = "1,1")]
    pub zeta: (Complex64, Complex64),
    #[arg(long, value_parser = parse_complex, default_value = "1")]
    pub omega2: Complex64,
    /// Number of radii, one spiral period (4 pi in ln t) apart.
    #[arg(long, default_value_t = 6)]
    pub points: usize,
    /// ln t of the first (largest) radius before period spacing begins.
    #[arg(long, default_value_t = -6.0, allow_hyphen_values = true)]
    pub start: f64,
}

fn blowup_fit(a: &BlowupFitArgs) -> Result<RunOutput> {
    let params = a.common.params(DomainVariant::DBeta)?;
    let cfg = a.common.quad();
    let zeta = PointC2::new(a.zeta.0, a.zeta.1);
    let ts: Vec<f64> = (1..=a.points)
        .map(|k| (a.start - 4.0 * PI * k as f64).exp())
        .collect();
    let fit = analysis::blowup_exponent_fit(&params, &zeta, a.omega2, &ts, &cfg)?;
    let mut out = RunOutput::default();
    out.scalar("slope", Value::Real(fit.slope));
    out.scalar("stderr", Value::Real(fit.stderr));
    out.scalar("expected", Value::Real(params.nu - 1.0));
    out.scalar("points", Value::Int(fit.points as i64));
    Ok(out)
}

#[derive(Args, Debug)]
pub struct RotationCheckArgs {
    #[command(flatten)]
    pub common: CommonOpts,
    /// Rotation angle: radians or "k*pi".
    #[arg(long, value_parser = parse_angle, default_value = "0.5*pi")]
    pub theta: f64,
    #[arg(long, default_value_t = 10)]
    pub pairs: usize,
}

fn rotation_check(a: &RotationCheckArgs) -> Result<RunOutput> {
    let params = a.common.params(DomainVariant::DBetaPrime)?;
    let cfg = a.common.quad();
    let mut rng = ChaCha8Rng::seed_from_u64(a.common.seed);
    let mut out = RunOutput::default();
    out.table(&["case", "residual", "err_budget"]);
    let mut worst: f64 = 0.0;
    for case in 0..a.pairs {
        let z = sampling::interior_point_prime(&params, &mut rng);
        let w = sampling::interior_point_prime(&params, &mut rng);
        let base = kernel_prime(&params, &z, &w, &cfg)?;
        let residual = analysis::rotation_invariance_residual(&params, &z, &w, a.theta, &cfg)?;
        let budget = 2.0 * base.err_estimate + 1e-10 + 1e-9 * base.value.norm();
        worst = worst.max(residual / budget);
        out.row(vec![
            Value::Int(case as i64),
            Value::Real(residual),
            Value::Real(budget),
        ]);
    }
    out.scalar("theta", Value::Real(a.theta));
    out.scalar("worst_residual_over_budget", Value::Real(worst));
    Ok(out)
}

#[derive(Args, Debug)]
pub struct SingularityScanArgs {
    #[command(flatten)]
    pub common: CommonOpts,
    #[arg(long, value_parser = parse_point, default_value = "1,1")]
    pub zeta: (Complex64, Complex64),
    #[arg(long, value_parser = parse_complex, default_value = "1")]
    pub omega2: Complex64,
    #[arg(long, default_value_t = 1e-3)]
    pub t_from: f64,
    #[arg(long, default_value_t = 1e-1)]
    pub t_to: f64,
    #[arg(long, default_value_t = 10)]
    pub points: usize,
}

fn singularity_scan(a: &SingularityScanArgs) -> Result<RunOutput> {
    let params = a.common.params(DomainVariant::DBeta)?;
    let cfg = a.common.quad();
    let zeta = PointC2::new(a.zeta.0, a.zeta.1);
    // Log-spaced grid from t_from up to t_to.
    let grid: Vec<f64> = (0..a.points)
        .map(|k| {
            let s = k as f64 / (a.points - 1).max(1) as f64;
            (a.t_from.ln() + s * (a.t_to.ln() - a.t_from.ln())).exp()
        })
        .collect();
    let rows = analysis::singularity_scan(&params, &zeta, a.omega2, &grid, &cfg)?;
    let mut out = RunOutput::default();
    out.table(&["t", "magnitude", "err_estimate"]);
    for r in rows {
        out.row(vec![
            Value::Real(r.t),
            Value::Real(r.magnitude),
            Value::Real(r.err),
        ]);
    }
    Ok(out)
}

#[derive(Args, Debug)]
pub struct LeviArgs {
    #[command(flatten)]
    pub common: CommonOpts,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    /// Offset of the profile transition: a = mu + offset.
    #[arg(long, default_value_t = 1.0)]
    pub a_offset: f64,
}

fn levi(a: &LeviArgs) -> Result<RunOutput> {
    let params = a.common.params(DomainVariant::SmoothWorm)?;
    let eta = EtaProfile::new(params.mu, params.mu + a.a_offset)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.common.seed);
    let mut out = RunOutput::default();
    out.table(&["class", "z1", "z2", "tangential_levi"]);
    for k in 0..a.samples {
        let (p, class) = if k % 2 == 0 {
            (sampling::annulus_point(params.mu, &mut rng), "annulus")
        } else {
            (
                sampling::strongly_pseudoconvex_boundary_point(&eta, &mut rng),
                "strongly-pseudoconvex",
            )
        };
        debug_assert_eq!(
            annulus_contains(params.mu, &p)?,
            class == "annulus"
        );
        let v = complex_tangent(&eta, &p)?;
        let l = levi_form(&eta, &p, &v)?;
        out.row(vec![
            Value::Text(class.into()),
            Value::Complex(p.z1),
            Value::Complex(p.z2),
            Value::Real(l),
        ]);
    }
    Ok(out)
}

#[derive(Args, Debug)]
pub struct ExhaustionArgs {
    #[command(flatten)]
    pub common: CommonOpts,
    /// Profile half-width: radians or "k*pi".
    #[arg(long, value_parser = parse_angle)]
    pub mu: f64,
    #[arg(long)]
    pub delta: f64,
    #[arg(long, default_value_t = 256)]
    pub grid_n: usize,
}

fn exhaustion(a: &ExhaustionArgs) -> Result<RunOutput> {
    let query = ExhaustionQuery::new(a.mu, a.delta)?;
    let verdict = exhaustion_feasibility(&query);
    let mut out = RunOutput::default();
    out.scalar(
        "verdict",
        Value::Text(if verdict.feasible { "feasible" } else { "infeasible" }.into()),
    );
    out.scalar("margin", Value::Real(verdict.margin));
    out.scalar("exponent_bound", Value::Real(df_exponent_bound(a.mu)?));
    match verdict.witness {
        Some(WitnessFn::Cosine { k }) => {
            out.scalar("witness", Value::Text(format!("cos({k}*s)")));
            out.scalar(
                "witness_checked",
                Value::Text(
                    ode_positivity_check(a.delta, a.mu, &WitnessFn::Cosine { k }, a.grid_n)?
                        .to_string(),
                ),
            );
        }
        Some(WitnessFn::Constant { value }) => {
            out.scalar("witness", Value::Text(format!("{value}")));
        }
        None => out.scalar("witness", Value::Text("none".into())),
    }
    Ok(out)
}

#[derive(Args, Debug)]
pub struct GridDumpArgs {
    #[command(flatten)]
    pub common: CommonOpts,
    #[arg(long, value_enum, default_value_t = DomainChoice::Prime)]
    pub domain: DomainChoice,
    #[arg(long, default_value_t = 100_000)]
    pub max_nodes: usize,
}

fn grid_dump(a: &GridDumpArgs) -> Result<RunOutput> {
    let variant = match a.domain {
        DomainChoice::Prime => DomainVariant::DBetaPrime,
        DomainChoice::Unprime => DomainVariant::DBeta,
    };
    let params = a.common.params(variant)?;
    let cfg = a.common.quad();
    let grid = domain_quadrature_grid(&params, &cfg)?;
    let mut out = RunOutput::default();
    out.scalar("total_nodes", Value::Int(grid.len() as i64));
    out.scalar("total_weight", Value::Real(grid.total_weight()));
    out.table(&["x", "y", "s", "theta", "weight"]);
    for node in grid.iter().take(a.max_nodes) {
        out.row(vec![
            Value::Real(node.x),
            Value::Real(node.y),
            Value::Real(node.s),
            Value::Real(node.theta),
            Value::Real(node.weight),
        ]);
    }
    out.scalar("emitted_nodes", Value::Int(out.rows.len() as i64));
    Ok(out)
}
