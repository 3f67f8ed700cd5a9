//! End-to-end stability decision and parameter sweeps.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boundary::{BoundaryCondition, BoundaryError};
use crate::kl::{self, KlError};
use crate::scheme::{AssumptionReport, Scheme, SchemeError, DEFAULT_SYMBOL_SAMPLES};
use crate::winding::{self, RefinementPolicy, WindingError, WindingResult};
use crate::Tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyzerError {
    #[error("z0 = {0} is not on the unit circle")]
    NotOnUnitCircle(Complex64),
    #[error("kernel of B K(z0) is not one-dimensional at the requested tolerance")]
    IllConditionedKernel,
    #[error(transparent)]
    Kl(#[from] KlError),
}

/// Knobs for [`analyze`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnalysisConfig {
    pub tolerances: Tolerances,
    /// Symbol samples for the Cauchy-stability and curve-membership checks.
    pub symbol_samples: usize,
    /// Initial samples of the determinant curve.
    pub curve_samples: usize,
    /// Evaluation budget for winding refinement.
    pub max_evaluations: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            symbol_samples: DEFAULT_SYMBOL_SAMPLES,
            curve_samples: 1024,
            max_evaluations: 1 << 16,
        }
    }
}

impl AnalysisConfig {
    pub fn refinement_policy(&self) -> RefinementPolicy {
        RefinementPolicy {
            max_evaluations: self.max_evaluations,
            origin_tol: self.tolerances.origin_tol,
            ..RefinementPolicy::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabilityStatus {
    StronglyStable,
    UnstableExteriorEigenvalue,
    UnstableBoundaryZero,
    AssumptionViolated,
    Inconclusive,
}

impl StabilityStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::StronglyStable => "StronglyStable",
            Self::UnstableExteriorEigenvalue => "UnstableExteriorEigenvalue",
            Self::UnstableBoundaryZero => "UnstableBoundaryZero",
            Self::AssumptionViolated => "AssumptionViolated",
            Self::Inconclusive => "Inconclusive",
        }
    }

    pub fn is_unstable(&self) -> bool {
        matches!(
            self,
            Self::UnstableExteriorEigenvalue | Self::UnstableBoundaryZero
        )
    }
}

/// Kind of a determinant zero found on the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryZeroKind {
    /// `z0` not on the symbol curve: an eigenvalue on the circle.
    #[serde(rename = "type_ii_eigenvalue_on_circle")]
    EigenvalueOnCircle,
    /// On the symbol curve, but the mode does not use the unit-modulus root.
    #[serde(rename = "type_iii_eigenvalue_in_gamma")]
    EigenvalueInGamma,
    /// On the symbol curve and the mode carries a unit-modulus root.
    #[serde(rename = "type_iv_generalized_eigenvalue")]
    GeneralizedEigenvalue,
    #[serde(rename = "unresolved")]
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryZero {
    pub z0: Complex64,
    pub classification: BoundaryZeroKind,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub assumptions: Option<AssumptionReport>,
    pub winding: Option<WindingResult>,
    pub winding_count: Option<i64>,
    pub direct_count: Option<usize>,
    pub exterior_roots: Vec<Complex64>,
    pub boundary_band_roots: Vec<Complex64>,
    /// `det C` coefficients, ascending, as `[re, im]`.
    pub det_c: Vec<[f64; 2]>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    pub exterior_zero_count: Option<usize>,
    pub boundary_zeros: Vec<BoundaryZero>,
    pub diagnostics: Diagnostics,
}

impl StabilityVerdict {
    fn new(status: StabilityStatus, diagnostics: Diagnostics) -> Self {
        Self {
            status,
            exterior_zero_count: None,
            boundary_zeros: Vec::new(),
            diagnostics,
        }
    }
}

/// Decides strong stability of `s` closed by `bc`.
///
/// Assumption failures, numerical breakdowns and disagreements between the
/// winding count and the direct root count are all reported through the
/// verdict status rather than as errors.
pub fn analyze(s: &Scheme, bc: &BoundaryCondition, cfg: &AnalysisConfig) -> StabilityVerdict {
    let tol = &cfg.tolerances;
    let report = s.validate(cfg.symbol_samples, tol.cauchy_tol);
    let mut diag = Diagnostics {
        assumptions: Some(report.clone()),
        ..Diagnostics::default()
    };
    if !report.all_pass() {
        diag.notes.push(format!(
            "failed assumptions: {}",
            report.failures().join(", ")
        ));
        return StabilityVerdict::new(StabilityStatus::AssumptionViolated, diag);
    }

    let bc = match align_ghost_rows(s, bc) {
        Ok(aligned) => {
            if aligned.r() != bc.r() {
                diag.notes.push(format!(
                    "stencil width is {}, kept the {} ghost rows nearest the boundary",
                    s.r(),
                    aligned.r()
                ));
            }
            aligned
        }
        Err(e) => {
            diag.notes.push(e.to_string());
            return StabilityVerdict::new(StabilityStatus::AssumptionViolated, diag);
        }
    };

    let rb = match kl::reduce_boundary(s, &bc) {
        Ok(rb) => rb,
        Err(e) => {
            diag.notes.push(format!("reduction failed: {e}"));
            return StabilityVerdict::new(StabilityStatus::Inconclusive, diag);
        }
    };
    diag.det_c = rb.det_c_coefficients();

    let direct = match kl::exterior_zero_count_direct(&rb, tol) {
        Ok(d) => d,
        Err(e) => {
            diag.notes
                .push(format!("root finding on det C failed: {e}"));
            return StabilityVerdict::new(StabilityStatus::Inconclusive, diag);
        }
    };
    diag.direct_count = Some(direct.count);
    diag.exterior_roots = direct.exterior_roots.clone();
    diag.boundary_band_roots = direct.boundary_band.clone();

    let wound =
        winding::exterior_zero_count_winding(&rb, cfg.curve_samples, &cfg.refinement_policy());
    let origin_on_curve = match &wound {
        Ok(w) => {
            diag.winding = Some(w.winding.clone());
            diag.winding_count = Some(w.count);
            false
        }
        Err(WindingError::OriginOnCurve { min_distance }) => {
            diag.winding = Some(WindingResult {
                index: None,
                min_distance: *min_distance,
                samples_used: 0,
                origin_on_curve: true,
            });
            true
        }
        Err(e) => {
            diag.notes.push(format!("winding failed: {e}"));
            return StabilityVerdict::new(StabilityStatus::Inconclusive, diag);
        }
    };

    if origin_on_curve || !direct.boundary_band.is_empty() {
        if direct.boundary_band.is_empty() {
            diag.notes.push(
                "curve passes through the origin but det C has no root on the unit circle".into(),
            );
            return StabilityVerdict::new(StabilityStatus::Inconclusive, diag);
        }
        let boundary_zeros = direct
            .boundary_band
            .iter()
            .map(|&z0| BoundaryZero {
                z0,
                classification: classify_boundary_zero(s, &bc, z0, cfg)
                    .unwrap_or(BoundaryZeroKind::Unresolved),
            })
            .collect();
        return StabilityVerdict {
            status: StabilityStatus::UnstableBoundaryZero,
            exterior_zero_count: Some(direct.count),
            boundary_zeros,
            diagnostics: diag,
        };
    }

    let count = diag.winding_count.expect("winding succeeded");
    if count < 0 || count as usize != direct.count {
        diag.notes.push(format!(
            "winding count {count} disagrees with det C root count {}",
            direct.count
        ));
        return StabilityVerdict::new(StabilityStatus::Inconclusive, diag);
    }
    StabilityVerdict {
        status: if count == 0 {
            StabilityStatus::StronglyStable
        } else {
            StabilityStatus::UnstableExteriorEigenvalue
        },
        exterior_zero_count: Some(direct.count),
        boundary_zeros: Vec::new(),
        diagnostics: diag,
    }
}

/// Drops the far ghost rows when the interior stencil is narrower than the
/// boundary (Beam-Warming at `lambda = 1` has `r = 1`).
fn align_ghost_rows(
    s: &Scheme,
    bc: &BoundaryCondition,
) -> Result<BoundaryCondition, BoundaryError> {
    if bc.r() == s.r() {
        Ok(bc.clone())
    } else {
        bc.restricted_to(s.r())
    }
}

/// Parameters `xi` where the symbol curve passes within `gamma_tol` of `z0`.
fn symbol_preimages(s: &Scheme, z0: Complex64, samples: usize, gamma_tol: f64) -> Vec<(f64, f64)> {
    let n = samples.max(64);
    let h = 2.0 * std::f64::consts::PI / n as f64;
    let dist = |xi: f64| (s.symbol(xi) - z0).norm();
    let values: Vec<f64> = (0..n).map(|i| dist(i as f64 * h)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        let prev = values[(i + n - 1) % n];
        let next = values[(i + 1) % n];
        if values[i] <= prev && values[i] < next {
            // golden-section search on the bracketing cell pair
            let (mut a, mut b) = ((i as f64 - 1.0) * h, (i as f64 + 1.0) * h);
            let g = 0.5 * (5f64.sqrt() - 1.0);
            let (mut c, mut d) = (b - g * (b - a), a + g * (b - a));
            for _ in 0..80 {
                if dist(c) < dist(d) {
                    b = d;
                } else {
                    a = c;
                }
                c = b - g * (b - a);
                d = a + g * (b - a);
            }
            let xi = 0.5 * (a + b);
            let best = dist(xi);
            if best <= gamma_tol {
                out.push((xi.rem_euclid(2.0 * std::f64::consts::PI), best));
            }
        }
    }
    out
}

/// Sorts a determinant zero on the unit circle into eigenvalue types.
///
/// Off the symbol curve the zero is an eigenvalue on the circle. On the curve,
/// some characteristic root `kappa_0 = e^{i xi}` has unit modulus; the zero is
/// an eigenvalue when the kernel vector of `B K_{-r,m-1}(z0)` has no component
/// on the `kappa_0` columns, and a generalized eigenvalue otherwise.
pub fn classify_boundary_zero(
    s: &Scheme,
    bc: &BoundaryCondition,
    z0: Complex64,
    cfg: &AnalysisConfig,
) -> Result<BoundaryZeroKind, AnalyzerError> {
    let tol = &cfg.tolerances;
    if (z0.norm() - 1.0).abs() > 10.0 * tol.unit_circle_tol {
        return Err(AnalyzerError::NotOnUnitCircle(z0));
    }
    let bc = align_ghost_rows(s, bc).map_err(KlError::from)?;
    let preimages = symbol_preimages(s, z0, cfg.symbol_samples, tol.gamma_tol);
    if preimages.is_empty() {
        return Ok(BoundaryZeroKind::EigenvalueOnCircle);
    }

    let roots = kl::stable_roots(s, z0, tol)?.roots;
    let k = kl::k_matrix(&roots, -(s.r() as isize), bc.m() as isize - 1)?;
    let b = bc.assemble().map(|v| Complex64::new(v, 0.0));
    let bk = b * k.values;
    let svd = bk.svd(false, true);
    let v_t = svd.v_t.as_ref().expect("requested V^H");
    let sv = &svd.singular_values;
    let smax = sv.max();
    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&a, &b| sv[a].total_cmp(&sv[b]));
    if order.len() >= 2 && sv[order[1]] <= tol.kernel_tol * smax {
        return Err(AnalyzerError::IllConditionedKernel);
    }
    let kernel: Vec<Complex64> = v_t.row(order[0]).iter().map(|c| c.conj()).collect();
    let norm = kernel.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();

    let match_radius = tol.gamma_tol.sqrt();
    let mut col = 0;
    let mut unit_component = 0.0f64;
    for root in roots.iter() {
        let on_circle = preimages
            .iter()
            .any(|&(xi, _)| (root.value - Complex64::from_polar(1.0, xi)).norm() <= match_radius);
        for _ in 0..root.multiplicity {
            if on_circle {
                unit_component = unit_component.max(kernel[col].norm());
            }
            col += 1;
        }
    }
    Ok(if unit_component <= tol.kernel_tol * norm {
        BoundaryZeroKind::EigenvalueInGamma
    } else {
        BoundaryZeroKind::GeneralizedEigenvalue
    })
}

/// One `(lambda, sigma)` cell of a stability map.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapCell {
    pub lambda: f64,
    pub sigma: f64,
    /// Exterior zero count, or -1 when no count applies.
    pub zero_count: i64,
    pub status: StabilityStatus,
    pub winding_count: Option<i64>,
    pub direct_count: Option<usize>,
    pub boundary_band: bool,
}

/// Verdicts over a `lambda x sigma` grid, stored lambda-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityMap {
    pub lambda_grid: Vec<f64>,
    pub sigma_grid: Vec<f64>,
    pub cells: Vec<MapCell>,
}

impl StabilityMap {
    pub fn cell(&self, lambda_idx: usize, sigma_idx: usize) -> &MapCell {
        &self.cells[lambda_idx * self.sigma_grid.len() + sigma_idx]
    }

    /// Cells along `lambda` at a fixed sigma index.
    pub fn lambda_row(&self, sigma_idx: usize) -> Vec<&MapCell> {
        (0..self.lambda_grid.len())
            .map(|i| self.cell(i, sigma_idx))
            .collect()
    }

    /// Maximal runs of consecutive strongly stable lambdas, as `(first, last)`.
    pub fn stable_intervals(&self, sigma_idx: usize) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        let mut start: Option<f64> = None;
        let mut last = 0.0;
        for cell in self.lambda_row(sigma_idx) {
            if cell.status == StabilityStatus::StronglyStable {
                start.get_or_insert(cell.lambda);
                last = cell.lambda;
            } else if let Some(s) = start.take() {
                out.push((s, last));
            }
        }
        if let Some(s) = start {
            out.push((s, last));
        }
        out
    }

    /// CSV with header `lambda,sigma,zero_count,status`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda,sigma,zero_count,status\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{}\n",
                c.lambda,
                c.sigma,
                c.zero_count,
                c.status.as_str()
            ));
        }
        out
    }
}

fn map_cell(lambda: f64, sigma: f64, verdict: &StabilityVerdict) -> MapCell {
    let zero_count = match verdict.status {
        StabilityStatus::StronglyStable | StabilityStatus::UnstableExteriorEigenvalue => {
            verdict.exterior_zero_count.map_or(-1, |c| c as i64)
        }
        _ => -1,
    };
    MapCell {
        lambda,
        sigma,
        zero_count,
        status: verdict.status,
        winding_count: verdict.diagnostics.winding_count,
        direct_count: verdict.diagnostics.direct_count,
        boundary_band: !verdict.diagnostics.boundary_band_roots.is_empty()
            || verdict
                .diagnostics
                .winding
                .as_ref()
                .is_some_and(|w| w.origin_on_curve),
    }
}

fn analyze_cell<SF, BF>(
    scheme_family: &SF,
    bc_family: &BF,
    lambda: f64,
    sigma: f64,
    cfg: &AnalysisConfig,
) -> MapCell
where
    SF: Fn(f64) -> Result<Scheme, SchemeError>,
    BF: Fn(f64, f64) -> Result<BoundaryCondition, BoundaryError>,
{
    let verdict = match (scheme_family(lambda), bc_family(lambda, sigma)) {
        (Ok(s), Ok(bc)) => analyze(&s, &bc, cfg),
        (Err(e), _) => failed_verdict(e.to_string()),
        (_, Err(e)) => failed_verdict(e.to_string()),
    };
    map_cell(lambda, sigma, &verdict)
}

fn failed_verdict(note: String) -> StabilityVerdict {
    StabilityVerdict::new(
        StabilityStatus::AssumptionViolated,
        Diagnostics {
            notes: vec![note],
            ..Diagnostics::default()
        },
    )
}

/// Runs [`analyze`] on every `(lambda, sigma)` pair.
///
/// `jobs = 0` uses the default thread count. Results are written by index, so
/// the map does not depend on scheduling.
pub fn sweep<SF, BF>(
    scheme_family: SF,
    bc_family: BF,
    lambda_grid: &[f64],
    sigma_grid: &[f64],
    cfg: &AnalysisConfig,
    jobs: usize,
) -> StabilityMap
where
    SF: Fn(f64) -> Result<Scheme, SchemeError> + Sync,
    BF: Fn(f64, f64) -> Result<BoundaryCondition, BoundaryError> + Sync,
{
    let pairs: Vec<(f64, f64)> = lambda_grid
        .iter()
        .flat_map(|&l| sigma_grid.iter().map(move |&s| (l, s)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let cells = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(l, s)| analyze_cell(&scheme_family, &bc_family, l, s, cfg))
            .collect()
    });
    StabilityMap {
        lambda_grid: lambda_grid.to_vec(),
        sigma_grid: sigma_grid.to_vec(),
        cells,
    }
}

/// Bisects on `lambda` between a strongly stable and a non-stable value.
pub fn bisect_transition<SF, BF>(
    scheme_family: &SF,
    bc_family: &BF,
    sigma: f64,
    stable_lambda: f64,
    unstable_lambda: f64,
    cfg: &AnalysisConfig,
    iterations: usize,
) -> f64
where
    SF: Fn(f64) -> Result<Scheme, SchemeError>,
    BF: Fn(f64, f64) -> Result<BoundaryCondition, BoundaryError>,
{
    let (mut good, mut bad) = (stable_lambda, unstable_lambda);
    for _ in 0..iterations {
        let mid = 0.5 * (good + bad);
        let cell = analyze_cell(scheme_family, bc_family, mid, sigma, cfg);
        if cell.status == StabilityStatus::StronglyStable {
            good = mid;
        } else {
            bad = mid;
        }
    }
    0.5 * (good + bad)
}

/// `start, start + step, ...` up to `stop` inclusive, rounded to 12 decimals so
/// that grid points such as `1.0` are hit exactly.
pub fn uniform_grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    if step.is_nan() || step <= 0.0 || stop < start {
        return vec![start];
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    (0..=n)
        .map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12)
        .collect()
}

/// Beam-Warming interior family.
pub fn beam_warming_family(lambda: f64) -> Result<Scheme, SchemeError> {
    Scheme::beam_warming(lambda)
}

/// SILW boundaries with two ghost rows (Beam-Warming's stencil width).
pub fn silw_family(
    kd: usize,
    d: usize,
) -> impl Fn(f64, f64) -> Result<BoundaryCondition, BoundaryError> + Sync {
    move |_lambda, sigma| BoundaryCondition::silw(2, kd, d, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2ilw3() -> BoundaryCondition {
        BoundaryCondition::silw(2, 2, 3, 0.0).unwrap()
    }

    #[test]
    fn verdict_examples() {
        let cfg = AnalysisConfig::default();
        let v = analyze(&Scheme::beam_warming(0.7).unwrap(), &s2ilw3(), &cfg);
        assert_eq!(v.status, StabilityStatus::StronglyStable, "{v:?}");
        assert_eq!(v.exterior_zero_count, Some(0));
        assert!(v.boundary_zeros.is_empty());

        let v = analyze(&Scheme::beam_warming(1.4).unwrap(), &s2ilw3(), &cfg);
        assert_eq!(
            v.status,
            StabilityStatus::UnstableExteriorEigenvalue,
            "{v:?}"
        );
        assert!(v.exterior_zero_count.unwrap() >= 1);

        let v = analyze(&Scheme::beam_warming(2.1).unwrap(), &s2ilw3(), &cfg);
        assert_eq!(v.status, StabilityStatus::AssumptionViolated);
    }

    #[test]
    fn lambda_one_uses_narrow_stencil() {
        let v = analyze(
            &Scheme::beam_warming(1.0).unwrap(),
            &s2ilw3(),
            &AnalysisConfig::default(),
        );
        assert_ne!(v.status, StabilityStatus::AssumptionViolated, "{v:?}");
        assert_eq!(v.diagnostics.det_c.len(), 4);
    }

    #[test]
    fn narrow_boundary_is_rejected() {
        let bc = BoundaryCondition::silw(1, 2, 3, 0.0).unwrap();
        let v = analyze(
            &Scheme::beam_warming(0.5).unwrap(),
            &bc,
            &AnalysisConfig::default(),
        );
        assert_eq!(v.status, StabilityStatus::AssumptionViolated);
    }

    #[test]
    fn membership_threshold() {
        let cfg = AnalysisConfig::default();
        let s = Scheme::beam_warming(0.5).unwrap();
        // -1 is far from the curve of a dissipative scheme
        let far = Complex64::new(-1.0, 0.0);
        assert!(symbol_preimages(&s, far, 4096, 1e-6).is_empty());
        assert_eq!(
            classify_boundary_zero(&s, &s2ilw3(), far, &cfg).unwrap(),
            BoundaryZeroKind::EigenvalueOnCircle
        );
        // gamma(0) = 1 always belongs to the curve
        let pre = symbol_preimages(&s, Complex64::new(1.0, 0.0), 4096, 1e-6);
        assert!(pre
            .iter()
            .any(|&(xi, d)| (xi.min(2.0 * std::f64::consts::PI - xi)) < 1e-6 && d < 1e-9));
        assert!(classify_boundary_zero(&s, &s2ilw3(), Complex64::new(2.0, 0.0), &cfg).is_err());
    }

    #[test]
    fn classify_at_one_uses_kernel() {
        // first-order upwind with U_{-1} = U_0: B K(1) = kappa^{-1} - 1 vanishes at kappa = 1,
        // so the constant mode rides on the unit-modulus root
        let s = Scheme::new(vec![0.5, 0.5], 0.5).unwrap();
        let bc = BoundaryCondition::custom(vec![vec![1.0]]).unwrap();
        let kind = classify_boundary_zero(
            &s,
            &bc,
            Complex64::new(1.0, 0.0),
            &AnalysisConfig::default(),
        )
        .unwrap();
        assert_eq!(kind, BoundaryZeroKind::GeneralizedEigenvalue);
    }

    #[test]
    fn grid_hits_integers() {
        let g = uniform_grid(0.01, 1.99, 0.01);
        assert_eq!(g.len(), 199);
        assert!(g.contains(&1.0));
        assert_eq!(*g.last().unwrap(), 1.99);
        assert_eq!(uniform_grid(-0.5, 0.48, 0.02).len(), 50);
    }

    #[test]
    fn map_layout_and_csv() {
        let cfg = AnalysisConfig::default();
        let map = sweep(
            beam_warming_family,
            silw_family(2, 3),
            &[0.5, 1.4],
            &[0.0, 0.1],
            &cfg,
            2,
        );
        assert_eq!(map.cells.len(), 4);
        assert_eq!(map.cell(1, 1).lambda, 1.4);
        assert_eq!(map.cell(1, 1).sigma, 0.1);
        let csv = map.to_csv();
        assert!(csv.starts_with("lambda,sigma,zero_count,status\n0.5,0,0,StronglyStable\n"));
    }

    #[test]
    fn assumption_cells_get_sentinel() {
        let cfg = AnalysisConfig::default();
        let map = sweep(
            beam_warming_family,
            silw_family(2, 3),
            &[2.2],
            &[0.0],
            &cfg,
            1,
        );
        assert_eq!(map.cells[0].zero_count, -1);
        assert_eq!(map.cells[0].status, StabilityStatus::AssumptionViolated);
    }
}
