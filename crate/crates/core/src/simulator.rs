//! Time-domain runs of the half-line IBVP, used to corroborate verdicts.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::boundary::{BoundaryCondition, BoundaryError};
use crate::scheme::Scheme;

/// Runs stop once `max |U|` exceeds this.
pub const BLOWUP_THRESHOLD: f64 = 1e6;
/// Exported profiles are truncated to `[-CLIP, CLIP]`.
pub const CLIP: f64 = 1.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimulationError {
    #[error("invalid run: {0}")]
    InvalidRun(String),
    #[error("boundary uses {m} interior points but the grid has {cells}")]
    GridTooSmall { m: usize, cells: usize },
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
}

/// Boundary data `g(t)`.
#[derive(Clone)]
pub enum BoundaryData {
    Zero,
    /// `amplitude * exp(-rate (t - center)^2)`, derivatives exact.
    Gaussian {
        amplitude: f64,
        rate: f64,
        center: f64,
    },
    /// Arbitrary function; derivatives by centred differences with step `dt / 10`.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for BoundaryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero => write!(f, "Zero"),
            Self::Gaussian {
                amplitude,
                rate,
                center,
            } => f
                .debug_struct("Gaussian")
                .field("amplitude", amplitude)
                .field("rate", rate)
                .field("center", center)
                .finish(),
            Self::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl BoundaryData {
    /// `exp(-200 (t - 0.25)^2)`.
    pub fn gaussian_pulse() -> Self {
        Self::Gaussian {
            amplitude: 1.0,
            rate: 200.0,
            center: 0.25,
        }
    }

    fn is_finite_difference(&self) -> bool {
        matches!(self, Self::Custom(_))
    }

    /// `g^{(k)}(t)`; `h` is the difference step for custom data.
    pub fn derivative(&self, k: usize, t: f64, h: f64) -> f64 {
        match self {
            Self::Zero => 0.0,
            Self::Gaussian {
                amplitude,
                rate,
                center,
            } => {
                // d^k/dt^k e^{-c u^2} = (-sqrt c)^k H_k(sqrt c u) e^{-c u^2}
                let sc = rate.sqrt();
                let x = sc * (t - center);
                let (mut h0, mut h1) = (1.0, 2.0 * x);
                let hk = match k {
                    0 => h0,
                    _ => {
                        for n in 1..k {
                            let next = 2.0 * x * h1 - 2.0 * n as f64 * h0;
                            h0 = h1;
                            h1 = next;
                        }
                        h1
                    }
                };
                amplitude * (-sc).powi(k as i32) * hk * (-x * x).exp()
            }
            Self::Custom(g) => {
                if k == 0 {
                    return g(t);
                }
                let mut binom = 1.0;
                let mut sum = 0.0;
                for i in 0..=k {
                    let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                    sum += sign * binom * g(t + (k as f64 / 2.0 - i as f64) * h);
                    binom = binom * (k - i) as f64 / (i + 1) as f64;
                }
                sum / h.powi(k as i32)
            }
        }
    }
}

/// Setup of one IBVP run on `x_j = j dx`, `dx = 1 / cells`, `j = 0..cells-1`.
#[derive(Clone, Debug)]
pub struct IbvpRun {
    pub cells: usize,
    pub t_final: f64,
    pub velocity: f64,
    /// Misalignment; must match the sigma of a SILW boundary.
    pub sigma: f64,
    pub data: BoundaryData,
    /// Initial values per cell; zero when absent.
    pub initial: Option<Vec<f64>>,
    /// Keep every `record_every`-th profile; 0 keeps only the last one.
    pub record_every: usize,
}

impl IbvpRun {
    pub fn new(cells: usize, t_final: f64, velocity: f64, data: BoundaryData) -> Self {
        Self {
            cells,
            t_final,
            velocity,
            sigma: 0.0,
            data,
            initial: None,
            record_every: 0,
        }
    }

    pub fn dx(&self) -> f64 {
        1.0 / self.cells as f64
    }

    /// `dt = lambda dx / a`.
    pub fn dt(&self, lambda: f64) -> f64 {
        lambda * self.dx() / self.velocity
    }

    pub fn steps(&self, lambda: f64) -> usize {
        (self.t_final / self.dt(lambda)).round() as usize
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionField {
    /// Recorded time steps, ascending; the last is the final step taken.
    pub steps: Vec<usize>,
    /// Profiles at `steps`, ghosts first: entry `i` is `U_{i-r}`.
    pub values: Vec<Vec<f64>>,
    pub ghosts: usize,
    pub dx: f64,
    pub dt: f64,
    pub max_amplitude: f64,
    pub blowup_step: Option<usize>,
    /// Boundary-data derivatives came from finite differences.
    pub derivative_fallback: bool,
}

impl SolutionField {
    pub fn final_profile(&self) -> &[f64] {
        self.values.last().expect("at least one profile")
    }

    /// Interior part `U_0..U_{J-1}` of the final profile.
    pub fn final_interior(&self) -> &[f64] {
        &self.final_profile()[self.ghosts..]
    }
}

fn max_abs(u: &[f64]) -> f64 {
    u.iter().fold(0.0f64, |m, v| {
        if v.is_nan() {
            f64::INFINITY
        } else {
            m.max(v.abs())
        }
    })
}

/// Steps `U^{n+1}_j = sum_k a_k U^n_{j+k}` with ghosts refreshed from `bc` and
/// the boundary data before every step.
pub fn run_ibvp(
    s: &Scheme,
    bc: &BoundaryCondition,
    run: &IbvpRun,
) -> Result<SolutionField, SimulationError> {
    if run.cells == 0
        || run.velocity.is_nan()
        || run.velocity <= 0.0
        || run.t_final.is_nan()
        || run.t_final < 0.0
    {
        return Err(SimulationError::InvalidRun(
            "need cells > 0, velocity > 0 and t_final >= 0".into(),
        ));
    }
    if let crate::boundary::BoundaryKind::Silw(p) = bc.kind() {
        if (p.sigma - run.sigma).abs() > 1e-12 {
            return Err(SimulationError::InvalidRun(format!(
                "run sigma {} differs from boundary sigma {}",
                run.sigma, p.sigma
            )));
        }
    }
    let r = s.r();
    let bc = if bc.r() == r {
        bc.clone()
    } else {
        bc.restricted_to(r)?
    };
    if bc.m() > run.cells {
        return Err(SimulationError::GridTooSmall {
            m: bc.m(),
            cells: run.cells,
        });
    }
    let n_cells = run.cells;
    let mut u = vec![0.0; r + n_cells];
    if let Some(f) = &run.initial {
        if f.len() != n_cells {
            return Err(SimulationError::InvalidRun(format!(
                "initial data has {} values, grid has {n_cells}",
                f.len()
            )));
        }
        u[r..].copy_from_slice(f);
    }

    let dx = run.dx();
    let dt = run.dt(s.lambda());
    let h = dt / 10.0;
    let orders = bc.data_orders();
    // weights[i][k]: coefficient of g^{(k)} in ghost row i
    let weights: Vec<Vec<f64>> = (0..r)
        .map(|i| {
            (0..orders)
                .map(|k| {
                    bc.data_weight(i as isize - r as isize, k, dx, run.velocity)
                        .unwrap_or(0.0)
                })
                .collect()
        })
        .collect();
    let coeffs = s.coeffs();

    let set_ghosts = |u: &mut [f64], t: f64| {
        let derivs: Vec<f64> = (0..orders).map(|k| run.data.derivative(k, t, h)).collect();
        for i in 0..r {
            let extrap: f64 = bc.rows()[i]
                .iter()
                .enumerate()
                .map(|(s, b)| b * u[r + s])
                .sum();
            let data: f64 = weights[i].iter().zip(&derivs).map(|(w, d)| w * d).sum();
            u[i] = extrap + data;
        }
    };

    let steps = run.steps(s.lambda());
    let mut field = SolutionField {
        steps: Vec::new(),
        values: Vec::new(),
        ghosts: r,
        dx,
        dt,
        max_amplitude: 0.0,
        blowup_step: None,
        derivative_fallback: orders > 0 && run.data.is_finite_difference(),
    };

    set_ghosts(&mut u, 0.0);
    field.max_amplitude = max_abs(&u);
    if run.record_every > 0 {
        field.steps.push(0);
        field.values.push(u.clone());
    }

    let mut next = vec![0.0; r + n_cells];
    let mut last = 0;
    for n in 1..=steps {
        for j in 0..n_cells {
            // cell j reads U_{j-r}..U_j, i.e. indices j..=j+r
            next[r + j] = coeffs.iter().zip(&u[j..=j + r]).map(|(a, v)| a * v).sum();
        }
        std::mem::swap(&mut u, &mut next);
        set_ghosts(&mut u, n as f64 * dt);
        last = n;
        let amp = max_abs(&u);
        field.max_amplitude = field.max_amplitude.max(amp);
        if amp > BLOWUP_THRESHOLD {
            field.blowup_step = Some(n);
            break;
        }
        if run.record_every > 0 && n % run.record_every == 0 && n != steps {
            field.steps.push(n);
            field.values.push(u.clone());
        }
    }
    if field.steps.last() != Some(&last) || field.values.is_empty() {
        field.steps.push(last);
        field.values.push(u);
    }
    Ok(field)
}

/// One sigma of a scan.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub sigma: f64,
    /// Final interior profile truncated to `[-1, 1]`.
    pub clipped: Vec<f64>,
    pub max_amplitude: f64,
    pub blowup_step: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SigmaScan {
    pub lambda: f64,
    /// Cell positions `j dx`.
    pub x: Vec<f64>,
    pub rows: Vec<ScanRow>,
}

impl SigmaScan {
    /// CSV with header `sigma,x,value_clipped,max_amplitude_unclipped`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sigma,x,value_clipped,max_amplitude_unclipped\n");
        for row in &self.rows {
            for (x, v) in self.x.iter().zip(&row.clipped) {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    row.sigma, x, v, row.max_amplitude
                ));
            }
        }
        out
    }
}

/// One [`run_ibvp`] per sigma, in parallel over `jobs` threads (0 = default).
pub fn sigma_scan<BF>(
    s: &Scheme,
    bc_family: BF,
    sigma_grid: &[f64],
    template: &IbvpRun,
    jobs: usize,
) -> Result<SigmaScan, SimulationError>
where
    BF: Fn(f64) -> Result<BoundaryCondition, BoundaryError> + Sync,
{
    if sigma_grid.is_empty() {
        return Err(SimulationError::InvalidRun("empty sigma grid".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let rows: Result<Vec<ScanRow>, SimulationError> = pool.install(|| {
        sigma_grid
            .par_iter()
            .map(|&sigma| {
                let bc = bc_family(sigma)?;
                let run = IbvpRun {
                    sigma,
                    record_every: 0,
                    ..template.clone()
                };
                let field = run_ibvp(s, &bc, &run)?;
                Ok(ScanRow {
                    sigma,
                    clipped: field
                        .final_interior()
                        .iter()
                        .map(|v| v.clamp(-CLIP, CLIP))
                        .collect(),
                    max_amplitude: field.max_amplitude,
                    blowup_step: field.blowup_step,
                })
            })
            .collect()
    });
    let dx = template.dx();
    Ok(SigmaScan {
        lambda: s.lambda(),
        x: (0..template.cells).map(|j| j as f64 * dx).collect(),
        rows: rows?,
    })
}
