//! Command-line front end: `check`, `curve`, `sweep` and `simulate`.
//!
//! Exit codes: 0 strongly stable or successful export, 2 unstable, 3 assumption
//! violated, 4 inconclusive, 1 usage or configuration error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::analyzer::{self, AnalysisConfig, StabilityStatus};
use crate::boundary::{BoundaryCondition, BoundaryError, SilwParams};
use crate::scheme::{Scheme, SchemeError};
use crate::simulator::{self, BoundaryData, IbvpRun};
use crate::{kl, winding, Tolerances};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNSTABLE: i32 = 2;
pub const EXIT_ASSUMPTION: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

pub fn exit_code(status: StabilityStatus) -> i32 {
    match status {
        StabilityStatus::StronglyStable => EXIT_OK,
        StabilityStatus::UnstableExteriorEigenvalue | StabilityStatus::UnstableBoundaryZero => {
            EXIT_UNSTABLE
        }
        StabilityStatus::AssumptionViolated => EXIT_ASSUMPTION,
        StabilityStatus::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "upwind-gks",
    version,
    about = "GKS stability of totally upwind schemes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the stability verdict as JSON.
    Check(CommonArgs),
    /// Export the normalized determinant curve as CSV.
    Curve(CommonArgs),
    /// Export a stability map over lambda and sigma grids as CSV.
    Sweep(CommonArgs),
    /// Run sigma-scan simulations and export the amplitude field as CSV.
    Simulate(CommonArgs),
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// JSON run configuration; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Named interior scheme (beam-warming).
    #[arg(long)]
    preset: Option<String>,
    /// Interior coefficients a_{-r},...,a_0, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    coefficients: Option<Vec<f64>>,
    /// CFL number, or a grid A:B:STEP for sweeps.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// SILW boundary orders KD D.
    #[arg(long, num_args = 2, value_names = ["KD", "D"])]
    silw: Option<Vec<usize>>,
    /// SILW misalignment.
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<f64>,
    /// JSON file holding the extrapolation matrix, farthest ghost row first.
    #[arg(long)]
    custom_b: Option<PathBuf>,
    /// CFL grid A:B:STEP.
    #[arg(long, allow_hyphen_values = true)]
    lambda_grid: Option<String>,
    /// Misalignment grid A:B:STEP.
    #[arg(long, allow_hyphen_values = true)]
    sigma_grid: Option<String>,
    /// Initial samples of the determinant curve.
    #[arg(long)]
    samples: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Distance below which roots merge into one cluster.
    #[arg(long)]
    cluster_radius: Option<f64>,
    /// Band around |z| = 1 treated as the circle.
    #[arg(long)]
    unit_circle_tol: Option<f64>,
    /// Relative distance of the curve to 0 treated as a hit.
    #[arg(long)]
    origin_tol: Option<f64>,
    /// Tolerance for membership in the symbol curve.
    #[arg(long)]
    gamma_tol: Option<f64>,
    /// Relative threshold for singular values and kernel components.
    #[arg(long)]
    kernel_tol: Option<f64>,
    /// Slack in the bound |symbol| <= 1.
    #[arg(long)]
    cauchy_tol: Option<f64>,
    /// Interior cells for `simulate`.
    #[arg(long)]
    cells: Option<usize>,
    /// Final time for `simulate`.
    #[arg(long)]
    t_final: Option<f64>,
    /// Advection speed for `simulate`.
    #[arg(long)]
    velocity: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemeDescriptor {
    preset: Option<String>,
    coefficients: Option<Vec<f64>>,
    lambda: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CustomDescriptor {
    b: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundaryDescriptor {
    silw: Option<SilwParams>,
    custom: Option<CustomDescriptor>,
}

/// Contents of a `--config` file.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RunConfig {
    scheme: SchemeDescriptor,
    boundary: BoundaryDescriptor,
    lambda_grid: Option<String>,
    sigma_grid: Option<String>,
    tolerances: Option<Tolerances>,
    samples: Option<usize>,
    out: Option<PathBuf>,
    jobs: Option<usize>,
    cells: Option<usize>,
    t_final: Option<f64>,
    velocity: Option<f64>,
}

#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        Self(e.to_string())
    }
}

type CliResult<T> = Result<T, UsageError>;

macro_rules! usage {
    ($($arg:tt)*) => { UsageError(format!($($arg)*)) };
}

/// `A:B:STEP` (inclusive, ascending) or a single value.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| format!("bad number '{s}' in grid '{spec}'"))
    };
    match parts.as_slice() {
        [x] => Ok(vec![num(x)?]),
        [a, b, step] => {
            let (a, b, step) = (num(a)?, num(b)?, num(step)?);
            if step.is_nan() || step <= 0.0 || b < a || !a.is_finite() || !b.is_finite() {
                return Err(format!("grid '{spec}' must ascend with a positive step"));
            }
            Ok(analyzer::uniform_grid(a, b, step))
        }
        _ => Err(format!("grid '{spec}' is not A:B:STEP")),
    }
}

enum SchemeSpec {
    BeamWarming,
    Fixed(Scheme),
}

impl SchemeSpec {
    fn at(&self, lambda: f64) -> Result<Scheme, SchemeError> {
        match self {
            Self::BeamWarming => Scheme::beam_warming(lambda),
            Self::Fixed(s) => Ok(s.clone()),
        }
    }

    fn ghost_rows(&self) -> usize {
        match self {
            Self::BeamWarming => 2,
            Self::Fixed(s) => s.r(),
        }
    }
}

enum BoundarySpec {
    Silw { kd: usize, d: usize, sigma: f64 },
    Custom(BoundaryCondition),
}

impl BoundarySpec {
    fn at(&self, r: usize, sigma: f64) -> Result<BoundaryCondition, BoundaryError> {
        match self {
            Self::Silw { kd, d, .. } => BoundaryCondition::silw(r, *kd, *d, sigma),
            Self::Custom(bc) => Ok(bc.clone()),
        }
    }

    fn default_sigma(&self) -> f64 {
        match self {
            Self::Silw { sigma, .. } => *sigma,
            Self::Custom(_) => 0.0,
        }
    }
}

struct Resolved {
    scheme: SchemeSpec,
    /// Single lambda or grid, as given.
    lambdas: Vec<f64>,
    boundary: BoundarySpec,
    sigmas: Vec<f64>,
    cfg: AnalysisConfig,
    out: Option<PathBuf>,
    jobs: usize,
    cells: usize,
    t_final: f64,
    velocity: f64,
}

fn resolve(args: CommonArgs) -> CliResult<Resolved> {
    let file: RunConfig = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| usage!("cannot read {}: {e}", path.display()))?;
            serde_json::from_str(&text)
                .map_err(|e| usage!("invalid config {}: {e}", path.display()))?
        }
        None => RunConfig::default(),
    };

    // scheme
    let coefficients = args.coefficients.or(file.scheme.coefficients);
    let preset = args.preset.or(file.scheme.preset);
    let lambda_spec = args
        .lambda
        .clone()
        .or(args.lambda_grid.clone())
        .or(file.lambda_grid.clone());
    let lambdas = match lambda_spec {
        Some(spec) => parse_grid(&spec).map_err(UsageError)?,
        None => vec![file.scheme.lambda.unwrap_or(0.7)],
    };
    let scheme = match (preset, coefficients) {
        (Some(_), Some(_)) => {
            return Err(usage!("give either --preset or --coefficients, not both"))
        }
        (None, Some(c)) => {
            if lambdas.len() != 1 {
                return Err(usage!("a coefficient scheme takes a single --lambda"));
            }
            SchemeSpec::Fixed(Scheme::new(c, lambdas[0])?)
        }
        (Some(p), None) if p != "beam-warming" => return Err(usage!("unknown preset '{p}'")),
        _ => SchemeSpec::BeamWarming,
    };

    // boundary
    let custom_b = match &args.custom_b {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| usage!("cannot read {}: {e}", path.display()))?;
            Some(
                serde_json::from_str::<Vec<Vec<f64>>>(&text)
                    .map_err(|e| usage!("invalid matrix in {}: {e}", path.display()))?,
            )
        }
        None => file.boundary.custom.map(|c| c.b),
    };
    let silw = match &args.silw {
        Some(v) => Some(SilwParams {
            kd: v[0],
            d: v[1],
            sigma: args.sigma.unwrap_or(0.0),
        }),
        None => file.boundary.silw.map(|mut p| {
            if let Some(s) = args.sigma {
                p.sigma = s;
            }
            p
        }),
    };
    let boundary = match (silw, custom_b) {
        (Some(_), Some(_)) if args.silw.is_some() && args.custom_b.is_some() => {
            return Err(usage!("give either --silw or --custom-b, not both"))
        }
        (Some(p), None) => BoundarySpec::Silw {
            kd: p.kd,
            d: p.d,
            sigma: p.sigma,
        },
        (None, Some(b)) => BoundarySpec::Custom(BoundaryCondition::custom(b)?),
        (Some(p), Some(b)) => {
            // flags beat the config file
            if args.custom_b.is_some() {
                BoundarySpec::Custom(BoundaryCondition::custom(b)?)
            } else {
                BoundarySpec::Silw {
                    kd: p.kd,
                    d: p.d,
                    sigma: p.sigma,
                }
            }
        }
        (None, None) => BoundarySpec::Silw {
            kd: 2,
            d: 3,
            sigma: args.sigma.unwrap_or(0.0),
        },
    };
    if let BoundarySpec::Silw { kd, d, sigma } = boundary {
        // surface order and sigma errors early
        BoundaryCondition::silw(scheme.ghost_rows(), kd, d, sigma)?;
    }

    let sigmas = match args.sigma_grid.or(file.sigma_grid) {
        Some(spec) => parse_grid(&spec).map_err(UsageError)?,
        None => vec![boundary.default_sigma()],
    };
    if matches!(boundary, BoundarySpec::Custom(_)) && sigmas != [0.0] {
        return Err(usage!("sigma applies to SILW boundaries only"));
    }

    let mut tol = file.tolerances.unwrap_or_default();
    let overrides = [
        (&mut tol.cluster_radius, args.cluster_radius),
        (&mut tol.unit_circle_tol, args.unit_circle_tol),
        (&mut tol.origin_tol, args.origin_tol),
        (&mut tol.gamma_tol, args.gamma_tol),
        (&mut tol.kernel_tol, args.kernel_tol),
        (&mut tol.cauchy_tol, args.cauchy_tol),
    ];
    for (slot, value) in overrides {
        if let Some(v) = value {
            *slot = v;
        }
    }
    let all = [
        tol.cluster_radius,
        tol.unit_circle_tol,
        tol.origin_tol,
        tol.gamma_tol,
        tol.kernel_tol,
        tol.cauchy_tol,
    ];
    if all.iter().any(|v| !v.is_finite() || *v <= 0.0) {
        return Err(usage!("tolerances must be positive"));
    }
    let mut cfg = AnalysisConfig {
        tolerances: tol,
        ..AnalysisConfig::default()
    };
    if let Some(n) = args.samples.or(file.samples) {
        if n < 8 {
            return Err(usage!("--samples must be at least 8"));
        }
        cfg.curve_samples = n;
    }

    let cells = args.cells.or(file.cells).unwrap_or(1000);
    let t_final = args.t_final.or(file.t_final).unwrap_or(0.3);
    let velocity = args.velocity.or(file.velocity).unwrap_or(1.0);
    if cells == 0 || t_final.is_nan() || t_final < 0.0 || velocity.is_nan() || velocity <= 0.0 {
        return Err(usage!("need cells > 0, t-final >= 0 and velocity > 0"));
    }

    Ok(Resolved {
        scheme,
        lambdas,
        boundary,
        sigmas,
        cfg,
        out: args.out.or(file.out),
        jobs: args.jobs.or(file.jobs).unwrap_or(0),
        cells,
        t_final,
        velocity,
    })
}

fn emit(out: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| usage!("cannot write {}: {e}", path.display()))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| usage!("cannot write to stdout: {e}")),
    }
}

fn single(values: &[f64], what: &str) -> CliResult<f64> {
    match values {
        [v] => Ok(*v),
        _ => Err(usage!("this command takes a single {what}")),
    }
}

fn check(rv: Resolved) -> CliResult<i32> {
    let lambda = single(&rv.lambdas, "lambda")?;
    let sigma = single(&rv.sigmas, "sigma")?;
    let s = match rv.scheme.at(lambda) {
        Ok(s) => s,
        Err(e) => return Err(usage!("{e}")),
    };
    let bc = rv.boundary.at(rv.scheme.ghost_rows(), sigma)?;
    let verdict = analyzer::analyze(&s, &bc, &rv.cfg);
    let json = serde_json::to_string_pretty(&verdict)?;
    emit(&rv.out, &(json + "\n"))?;
    Ok(exit_code(verdict.status))
}

fn curve(rv: Resolved) -> CliResult<i32> {
    let lambda = single(&rv.lambdas, "lambda")?;
    let sigma = single(&rv.sigmas, "sigma")?;
    let s = rv.scheme.at(lambda)?;
    let bc = rv.boundary.at(rv.scheme.ghost_rows(), sigma)?;
    let bc = if bc.r() > s.r() {
        bc.restricted_to(s.r())?
    } else {
        bc
    };
    let rb = kl::reduce_boundary(&s, &bc)?;
    let samples = winding::sample_kl_curve(&rb, rv.cfg.curve_samples, true);
    emit(&rv.out, &samples.to_csv())?;
    Ok(EXIT_OK)
}

fn sweep(rv: Resolved) -> CliResult<i32> {
    let r = rv.scheme.ghost_rows();
    let map = analyzer::sweep(
        |l| rv.scheme.at(l),
        |_, sg| rv.boundary.at(r, sg),
        &rv.lambdas,
        &rv.sigmas,
        &rv.cfg,
        rv.jobs,
    );
    emit(&rv.out, &map.to_csv())?;
    Ok(EXIT_OK)
}

fn simulate(rv: Resolved) -> CliResult<i32> {
    let lambda = single(&rv.lambdas, "lambda")?;
    let s = rv.scheme.at(lambda)?;
    let report = s.validate(rv.cfg.symbol_samples, rv.cfg.tolerances.cauchy_tol);
    if !report.all_pass() {
        return Err(usage!("scheme fails {}", report.failures().join(", ")));
    }
    let run = IbvpRun::new(
        rv.cells,
        rv.t_final,
        rv.velocity,
        BoundaryData::gaussian_pulse(),
    );
    let r = rv.scheme.ghost_rows();
    let scan = simulator::sigma_scan(&s, |sg| rv.boundary.at(r, sg), &rv.sigmas, &run, rv.jobs)?;
    emit(&rv.out, &scan.to_csv())?;
    Ok(EXIT_OK)
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    EXIT_OK
                }
                _ => EXIT_USAGE,
            };
        }
    };
    let result = match cli.command {
        Command::Check(a) => resolve(a).and_then(check),
        Command::Curve(a) => resolve(a).and_then(curve),
        Command::Sweep(a) => resolve(a).and_then(sweep),
        Command::Simulate(a) => resolve(a).and_then(simulate),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}
