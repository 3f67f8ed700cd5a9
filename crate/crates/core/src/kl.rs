//! Kreiss-Lopatinskii determinant.
//!
//! Two independent routes are provided:
//!
//! * [`kl_det_direct`] builds the stable-subspace basis from the roots of the
//!   characteristic equation and evaluates `det(B K_{-r,m-1}) / det K_{0,r-1}`.
//! * [`reduce_boundary`] eliminates the first `m` columns of `B` with the
//!   interior recurrence, symbolically in `z`, leaving an `r x r` polynomial
//!   matrix `C(z)`. The intrinsic determinant is then the rational function
//!   `(-1)^{r(m-r)} det C(z) (a_{-r} / (a_0 - z))^{m-r}`.
//!
//! The reduced form is what the winding and root-count machinery uses; the
//! direct route exists to cross-check it.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boundary::{BoundaryCondition, BoundaryError};
use crate::poly::{NumericsError, Polynomial, RootSet, TRIM_TOL};
use crate::scheme::Scheme;
use crate::Tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KlError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error("a characteristic root vanishes; negative powers are undefined")]
    RootAtZero,
    #[error("|a0| = {0} is not below 1")]
    A0NotInterior(f64),
    #[error("det C has degree {found:?}, expected {expected}")]
    DegreeMismatch {
        expected: usize,
        found: Option<usize>,
    },
    #[error("invalid K-matrix line range [{i}, {j}] for r = {r}")]
    InvalidRange { i: isize, j: isize, r: usize },
}

/// Dense matrix of polynomials in `z`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_real(m: &DMatrix<f64>) -> Self {
        let (rows, cols) = m.shape();
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(Polynomial::from_real(&[m[(i, j)]]));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
    }

    /// Columns `start..start + n` as a new matrix.
    pub fn columns(&self, start: usize, n: usize) -> Self {
        let mut entries = Vec::with_capacity(self.rows * n);
        for i in 0..self.rows {
            for j in start..start + n {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.rows,
            cols: n,
            entries,
        }
    }

    pub fn eval(&self, z: Complex64) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval(z))
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(|p| p.degree()).max()
    }

    /// Determinant of a square polynomial matrix.
    ///
    /// Cofactor expansion up to 4x4; beyond that the determinant is sampled on
    /// a circle of radius 2 and interpolated by a discrete Fourier transform.
    pub fn determinant(&self) -> Polynomial {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows <= 4 {
            let idx: Vec<usize> = (0..self.cols).collect();
            return self.cofactor_det(0, &idx);
        }
        let bound = self.max_degree().unwrap_or(0) * self.rows;
        let n = bound + 1;
        let radius = 2.0;
        let values: Vec<Complex64> = (0..n)
            .map(|k| {
                let w =
                    Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
                self.eval(w).determinant()
            })
            .collect();
        let coeffs = (0..n)
            .map(|p| {
                let sum: Complex64 = values
                    .iter()
                    .enumerate()
                    .map(|(k, v)| {
                        v * Complex64::from_polar(
                            1.0,
                            -2.0 * std::f64::consts::PI * (k * p) as f64 / n as f64,
                        )
                    })
                    .sum();
                sum / (n as f64 * radius.powi(p as i32))
            })
            .collect();
        Polynomial::new(coeffs)
    }

    fn cofactor_det(&self, row: usize, cols: &[usize]) -> Polynomial {
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = Polynomial::zero();
        for (pos, &c) in cols.iter().enumerate() {
            let entry = self.get(row, c);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry * &self.cofactor_det(row + 1, &rest);
            acc = if pos % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }
}

/// `P_z(kappa) = sum_k a_k kappa^{r+k} - z kappa^r`, ascending powers of kappa.
pub fn characteristic_poly(s: &Scheme, z: Complex64) -> Polynomial {
    let r = s.r();
    let mut coeffs: Vec<Complex64> = s.coeffs().iter().map(|&a| Complex64::new(a, 0.0)).collect();
    coeffs[r] -= z;
    Polynomial::new(coeffs)
}

/// Characteristic roots at `z` with the Hersh-separation diagnostic.
#[derive(Clone, Debug, PartialEq)]
pub struct StableRoots {
    pub roots: RootSet,
    /// Set when `|z| > 1 + tol` but some root has `|kappa| >= 1 - tol`.
    pub hersh_violation: bool,
}

/// All `r` roots of the characteristic equation at `z`.
pub fn stable_roots(s: &Scheme, z: Complex64, tol: &Tolerances) -> Result<StableRoots, KlError> {
    let scale = s.coeffs().iter().map(|a| a.abs()).fold(z.norm(), f64::max);
    let lead = Complex64::new(s.a0(), 0.0) - z;
    if lead.norm() <= TRIM_TOL * scale {
        return Err(NumericsError::DegenerateLeadingCoefficient {
            modulus: lead.norm(),
        }
        .into());
    }
    let p = characteristic_poly(s, z);
    let roots = if s.r() == 0 {
        RootSet::default()
    } else {
        p.roots(tol.cluster_radius)?
    };
    let hersh_violation = z.norm() > 1.0 + tol.unit_circle_tol
        && roots
            .iter()
            .any(|k| k.value.norm() >= 1.0 - tol.unit_circle_tol);
    Ok(StableRoots {
        roots,
        hersh_violation,
    })
}

/// Rows `i..=j` of the stable-subspace basis, one column per root power.
#[derive(Clone, Debug, PartialEq)]
pub struct KMatrix {
    pub values: DMatrix<Complex64>,
    pub first_line: isize,
}

/// Extracts lines `i..=j` of the basis vectors built from `roots`.
///
/// A root `kappa` of multiplicity `beta` contributes the columns
/// `(l^q kappa^l)_l` for `q = 0..beta`, with the entry at `l = 0` equal to 1
/// for `q = 0` and 0 otherwise.
pub fn k_matrix(roots: &RootSet, i: isize, j: isize) -> Result<KMatrix, KlError> {
    let r = roots.total_multiplicity();
    if j < i || i < -(r as isize) {
        return Err(KlError::InvalidRange { i, j, r });
    }
    if i < 0 && roots.iter().any(|k| k.value.norm() <= TRIM_TOL) {
        return Err(KlError::RootAtZero);
    }
    let lines = (j - i + 1) as usize;
    let mut values = DMatrix::<Complex64>::zeros(lines, r);
    let mut col = 0;
    for root in roots.iter() {
        for q in 0..root.multiplicity {
            for (row, l) in (i..=j).enumerate() {
                values[(row, col)] = if l == 0 {
                    if q == 0 {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                } else {
                    (l as f64).powi(q as i32) * root.value.powi(l as i32)
                };
            }
            col += 1;
        }
    }
    Ok(KMatrix {
        values,
        first_line: i,
    })
}

/// Values produced by the K-matrix route.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirectDeterminant {
    /// `det(B K_{-r,m-1}(z))`, depends on the root ordering.
    pub delta_b: Complex64,
    /// `det K_{0,r-1}(z)`.
    pub normalizer: Complex64,
    /// Intrinsic determinant `delta_b / normalizer`.
    pub delta: Complex64,
}

/// Intrinsic Kreiss-Lopatinskii determinant through the characteristic roots.
pub fn kl_det_direct(
    s: &Scheme,
    bc: &BoundaryCondition,
    z: Complex64,
    tol: &Tolerances,
) -> Result<DirectDeterminant, KlError> {
    let r = s.r();
    if bc.r() != r {
        return Err(BoundaryError::GhostMismatch {
            have: bc.r(),
            need: r,
        }
        .into());
    }
    let roots = stable_roots(s, z, tol)?.roots;
    let k = k_matrix(&roots, -(r as isize), bc.m() as isize - 1)?;
    let b = bc.assemble().map(|v| Complex64::new(v, 0.0));
    let delta_b = (b * k.values).determinant();
    let normalizer = k_matrix(&roots, 0, r as isize - 1)?.values.determinant();
    Ok(DirectDeterminant {
        delta_b,
        normalizer,
        delta: delta_b / normalizer,
    })
}

/// Boundary matrix reduced against the interior recurrence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducedBoundary {
    pub c: PolyMatrix,
    pub det_c: Polynomial,
    pub r: usize,
    pub m: usize,
    /// `(-1)^{r(m-r)}`
    pub sign: f64,
    pub a_minus_r: f64,
    pub a0: f64,
}

impl ReducedBoundary {
    /// Intrinsic determinant `sign * det C(z) * (a_{-r} / (a_0 - z))^{m-r}`.
    pub fn delta(&self, z: Complex64) -> Complex64 {
        let ratio = Complex64::new(self.a_minus_r, 0.0) / (Complex64::new(self.a0, 0.0) - z);
        self.sign * self.det_c.eval(z) * ratio.powi(self.m as i32 - self.r as i32)
    }

    /// `delta(z) / z^r`, whose winding number around 0 is minus the number of
    /// zeros outside the unit disk.
    pub fn normalized_delta(&self, z: Complex64) -> Complex64 {
        self.delta(z) / z.powi(self.r as i32)
    }

    /// `det C` coefficients as `[re, im]` pairs, ascending powers.
    pub fn det_c_coefficients(&self) -> Vec<[f64; 2]> {
        self.det_c.coeffs().iter().map(|c| [c.re, c.im]).collect()
    }
}

/// Eliminates the first `m` columns of `B` using rows of the interior
/// recurrence `a_{-r} U_{l} + ... + a_{-1} U_{l+r-1} + (a_0 - z) U_{l+r} = 0`.
pub fn reduce_boundary(s: &Scheme, bc: &BoundaryCondition) -> Result<ReducedBoundary, KlError> {
    let r = s.r();
    let m = bc.m();
    if bc.r() != r {
        return Err(BoundaryError::GhostMismatch {
            have: bc.r(),
            need: r,
        }
        .into());
    }
    if s.a0().abs() >= 1.0 {
        return Err(KlError::A0NotInterior(s.a0().abs()));
    }
    let lead = s.a_minus_r();
    let scale = s.coeffs().iter().map(|a| a.abs()).fold(0.0, f64::max);
    if lead.abs() <= TRIM_TOL * scale {
        return Err(NumericsError::DegenerateLeadingCoefficient {
            modulus: lead.abs(),
        }
        .into());
    }

    // elimination row pattern, starting at the column being cleared
    let mut pattern: Vec<Polynomial> = s.coeffs()[..r]
        .iter()
        .map(|&a| Polynomial::from_real(&[a / lead]))
        .collect();
    pattern.push(Polynomial::from_real(&[s.a0() / lead, -1.0 / lead]));

    let mut work = PolyMatrix::from_real(&bc.assemble());
    for col in 0..m {
        for row in 0..r {
            let pivot = work.get(row, col).clone();
            if pivot.is_zero() {
                continue;
            }
            for (t, e) in pattern.iter().enumerate().skip(1) {
                let updated = work.get(row, col + t) - &(&pivot * e);
                work.set(row, col + t, updated);
            }
            work.set(row, col, Polynomial::zero());
        }
    }

    let c = work.columns(m, r);
    let det_c = c.determinant();
    if det_c.degree() != Some(m) {
        return Err(KlError::DegreeMismatch {
            expected: m,
            found: det_c.degree(),
        });
    }
    let parity = (r as i64 * (m as i64 - r as i64)).rem_euclid(2);
    Ok(ReducedBoundary {
        c,
        det_c,
        r,
        m,
        sign: if parity == 0 { 1.0 } else { -1.0 },
        a_minus_r: lead,
        a0: s.a0(),
    })
}

/// Zeros of the intrinsic determinant located from the roots of `det C`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectCount {
    /// Number of roots (with multiplicity) with `|z| > 1 + unit_circle_tol`.
    pub count: usize,
    pub exterior_roots: Vec<Complex64>,
    /// Roots with `||z| - 1| <= unit_circle_tol`.
    pub boundary_band: Vec<Complex64>,
}

/// Counts zeros of the determinant outside the closed unit disk.
pub fn exterior_zero_count_direct(
    rb: &ReducedBoundary,
    tol: &Tolerances,
) -> Result<DirectCount, KlError> {
    let mut out = DirectCount {
        count: 0,
        exterior_roots: Vec::new(),
        boundary_band: Vec::new(),
    };
    if rb.det_c.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    for root in rb.det_c.roots(tol.cluster_radius)?.iter() {
        let modulus = root.value.norm();
        if modulus > 1.0 + tol.unit_circle_tol {
            out.count += root.multiplicity;
            out.exterior_roots.push(root.value);
        } else if modulus >= 1.0 - tol.unit_circle_tol {
            out.boundary_band.push(root.value);
        }
    }
    Ok(out)
}
