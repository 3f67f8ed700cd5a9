//! Dense complex polynomials, root finding and root clustering.
//!
//! Polynomials are stored with ascending powers. Every constructor trims the
//! top coefficients that are negligible relative to the largest one, so the
//! leading coefficient of a non-zero polynomial is always significant.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance under which leading coefficients are dropped.
pub const TRIM_TOL: f64 = 1e-12;

/// Default radius under which two computed roots are merged into one.
pub const DEFAULT_CLUSTER_RADIUS: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("leading coefficient {modulus:e} is below the trim tolerance")]
    DegenerateLeadingCoefficient { modulus: f64 },
    #[error("root finding needs a polynomial of degree at least 1")]
    ConstantPolynomial,
    #[error("eigenvalue solver failed on the companion matrix")]
    EigenSolverFailed,
}

/// Complex polynomial `c[0] + c[1] x + ... + c[n] x^n`.
#[derive(Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming negligible
    /// leading terms.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        while let Some(last) = coeffs.last() {
            if last.norm() <= TRIM_TOL * scale || last.norm() == 0.0 {
                coeffs.pop();
            } else {
                break;
            }
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
    }

    /// `lead * prod (x - root)^mult`.
    pub fn from_roots(lead: Complex64, roots: &RootSet) -> Self {
        let mut p = Self::constant(lead);
        for root in roots.iter() {
            let factor = Self::new(vec![-root.value, Complex64::new(1.0, 0.0)]);
            for _ in 0..root.multiplicity {
                p = &p * &factor;
            }
        }
        p
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    pub fn max_coeff_modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// All roots with multiplicities, merged under `cluster_radius`.
    pub fn roots(&self, cluster_radius: f64) -> Result<RootSet, NumericsError> {
        roots_of_coeffs(&self.coeffs, cluster_radius)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        Polynomial::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).copied().unwrap_or(zero)
                        + rhs.coeffs.get(i).copied().unwrap_or(zero)
                })
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

/// A root together with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// Distinct roots of a polynomial; multiplicities sum to its degree.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct RootSet {
    roots: Vec<Root>,
}

impl RootSet {
    pub fn new(roots: Vec<Root>) -> Self {
        Self { roots }
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Root> {
        self.roots.iter()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Sum of multiplicities.
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Smallest distance between two distinct representatives.
    pub fn min_gap(&self) -> f64 {
        let mut gap = f64::INFINITY;
        for (i, a) in self.roots.iter().enumerate() {
            for b in &self.roots[i + 1..] {
                gap = gap.min((a.value - b.value).norm());
            }
        }
        gap
    }

    /// Every root repeated according to its multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
            .collect()
    }
}

/// Roots of the polynomial with ascending coefficients `coeffs`.
///
/// The companion matrix eigenvalues are polished with Newton steps (a step is
/// kept only when it lowers the residual) and then merged by single-linkage
/// clustering under `cluster_radius`; each cluster is reported at its mean.
pub fn roots_of_coeffs(
    coeffs: &[Complex64],
    cluster_radius: f64,
) -> Result<RootSet, NumericsError> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let lead = match coeffs.last() {
        Some(c) => *c,
        None => return Err(NumericsError::ConstantPolynomial),
    };
    if lead.norm() <= TRIM_TOL * scale || lead.norm() == 0.0 {
        return Err(NumericsError::DegenerateLeadingCoefficient {
            modulus: lead.norm(),
        });
    }
    if coeffs.len() == 1 {
        return Err(NumericsError::ConstantPolynomial);
    }

    // exact zero roots are split off; Schur can stall on nilpotent blocks
    let zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = &coeffs[zeros..];
    let mut raw = vec![Complex64::new(0.0, 0.0); zeros];
    match reduced.len() - 1 {
        0 => {}
        1 => raw.push(-reduced[0] / reduced[1]),
        _ => raw.extend(
            companion_eigenvalues(reduced)
                .or_else(|| aberth(reduced))
                .ok_or(NumericsError::EigenSolverFailed)?,
        ),
    }

    let p = Polynomial {
        coeffs: coeffs.to_vec(),
    };
    let dp = p.derivative();
    let polished: Vec<Complex64> = raw
        .into_iter()
        .map(|mut x| {
            for _ in 0..2 {
                let fx = p.eval(x);
                let dfx = dp.eval(x);
                if dfx.norm() == 0.0 {
                    break;
                }
                let next = x - fx / dfx;
                if next.is_finite() && p.eval(next).norm() < fx.norm() {
                    x = next;
                } else {
                    break;
                }
            }
            x
        })
        .collect();

    Ok(cluster(&polished, cluster_radius))
}

fn companion_eigenvalues(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let mut companion = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        companion[(i, n - 1)] = -coeffs[i] / lead;
    }
    let values = nalgebra::Schur::try_new(companion, f64::EPSILON, 10_000)?.eigenvalues()?;
    values
        .iter()
        .all(|v| v.is_finite())
        .then(|| values.iter().copied().collect())
}

/// Aberth-Ehrlich simultaneous iteration.
fn aberth(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let p = Polynomial {
        coeffs: coeffs.to_vec(),
    };
    let dp = p.derivative();
    let lead = coeffs[n].norm();
    let radius = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| c.norm() / lead)
            .fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                0.5 * radius,
                2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4,
            )
        })
        .collect();
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let ratio = p.eval(z[i]) / dp.eval(z[i]);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z.iter().all(|v| v.is_finite()).then_some(z)
}

/// Single-linkage clustering; output sorted by real then imaginary part.
fn cluster(values: &[Complex64], radius: f64) -> RootSet {
    let n = values.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= radius {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                if a != b {
                    label[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Complex64, usize)> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        let root = find(&mut label, i);
        match groups.iter_mut().find(|g| g.0 == root) {
            Some(g) => {
                g.1 += v;
                g.2 += 1;
            }
            None => groups.push((root, v, 1)),
        }
    }
    let mut roots: Vec<Root> = groups
        .into_iter()
        .map(|(_, sum, count)| Root {
            value: sum / count as f64,
            multiplicity: count,
        })
        .collect();
    roots.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    RootSet::new(roots)
}
