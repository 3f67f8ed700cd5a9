//! Interior schemes `U_j^{n+1} = sum_{k=-r}^{0} a_k U_{j+k}^n`, their symbol and
//! the structural assumptions the stability analysis relies on.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::TRIM_TOL;

/// Default tolerance above 1 tolerated on `|gamma|` before Cauchy stability fails.
pub const DEFAULT_CAUCHY_TOL: f64 = 1e-10;
/// Default number of symbol samples used by [`Scheme::validate`].
pub const DEFAULT_SYMBOL_SAMPLES: usize = 4096;

const CONSISTENCY_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SchemeError {
    #[error("scheme needs at least one non-zero coefficient")]
    EmptyStencil,
    #[error("CFL number must be positive and finite, got {0}")]
    InvalidLambda(f64),
    #[error("coefficient {0} is not finite")]
    NonFiniteCoefficient(f64),
}

/// Totally upwind interior scheme.
///
/// Coefficients are stored as `a_{-r}, ..., a_0`; leading entries that are
/// negligible relative to the largest one are trimmed at construction, so the
/// stencil width `r` always satisfies `a_{-r} != 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scheme {
    coeffs: Vec<f64>,
    lambda: f64,
}

impl Scheme {
    pub fn new(coeffs: Vec<f64>, lambda: f64) -> Result<Self, SchemeError> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(SchemeError::InvalidLambda(lambda));
        }
        if let Some(&bad) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(SchemeError::NonFiniteCoefficient(bad));
        }
        let scale = coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(SchemeError::EmptyStencil);
        }
        let first = coeffs
            .iter()
            .position(|c| c.abs() > TRIM_TOL * scale)
            .expect("non-zero scale");
        Ok(Self {
            coeffs: coeffs[first..].to_vec(),
            lambda,
        })
    }

    /// Second-order Beam-Warming upwind scheme.
    pub fn beam_warming(lambda: f64) -> Result<Self, SchemeError> {
        Self::new(
            vec![
                lambda * (lambda - 1.0) / 2.0,
                lambda * (2.0 - lambda),
                (lambda - 1.0) * (lambda - 2.0) / 2.0,
            ],
            lambda,
        )
    }

    /// Stencil width.
    pub fn r(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `a_{-r}, ..., a_0`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient `a_k` for `k` in `-r..=0`; zero outside the stencil.
    pub fn a(&self, k: isize) -> f64 {
        let idx = k + self.r() as isize;
        if k > 0 || idx < 0 {
            0.0
        } else {
            self.coeffs[idx as usize]
        }
    }

    pub fn a0(&self) -> f64 {
        *self.coeffs.last().expect("non-empty stencil")
    }

    pub fn a_minus_r(&self) -> f64 {
        self.coeffs[0]
    }

    /// `gamma(xi) = sum_k a_k e^{i k xi}`.
    pub fn symbol(&self, xi: f64) -> Complex64 {
        let r = self.r() as isize;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| a * Complex64::from_polar(1.0, (i as isize - r) as f64 * xi))
            .sum()
    }

    /// `-i gamma'(xi)`, i.e. `sum_k k a_k e^{i k xi}`.
    pub fn symbol_log_derivative(&self, xi: f64) -> Complex64 {
        let r = self.r() as isize;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let k = (i as isize - r) as f64;
                k * a * Complex64::from_polar(1.0, k * xi)
            })
            .sum()
    }

    /// Symbol curve sampled at `n + 1` uniform parameters over `[0, 2 pi]`.
    pub fn symbol_curve(&self, n: usize) -> CurveSamples {
        CurveSamples::sample(n, |xi| self.symbol(xi))
    }

    /// Checks non-degeneracy, Cauchy stability, consistency and `|a_0| < 1`.
    pub fn validate(&self, n_xi: usize, cauchy_tol: f64) -> AssumptionReport {
        let n_xi = n_xi.max(64);
        let max_symbol_modulus = (0..n_xi)
            .map(|i| self.symbol(2.0 * PI * i as f64 / n_xi as f64).norm())
            .fold(0.0, f64::max);
        let consistency_residual = self.coeffs.iter().sum::<f64>() - 1.0;
        let r = self.r() as isize;
        let order_residual = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| (i as isize - r) as f64 * a)
            .sum::<f64>()
            + self.lambda;
        let scale = 1.0 + self.coeffs.iter().map(|a| a.abs()).sum::<f64>() * (1.0 + r as f64);
        AssumptionReport {
            h0_nondegenerate: self.a_minus_r().abs() > 0.0,
            h2_cauchy_stable: max_symbol_modulus <= 1.0 + cauchy_tol,
            max_symbol_modulus,
            h3_consistent: consistency_residual.abs() <= CONSISTENCY_TOL * scale
                && order_residual.abs() <= CONSISTENCY_TOL * scale,
            consistency_residual,
            order_residual,
            a0_interior: self.a0().abs() < 1.0,
            a0: self.a0(),
        }
    }
}

/// Outcome of [`Scheme::validate`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub h0_nondegenerate: bool,
    pub h2_cauchy_stable: bool,
    pub max_symbol_modulus: f64,
    pub h3_consistent: bool,
    /// `sum a_k - 1`
    pub consistency_residual: f64,
    /// `sum k a_k + lambda`
    pub order_residual: f64,
    pub a0_interior: bool,
    pub a0: f64,
}

impl AssumptionReport {
    pub fn all_pass(&self) -> bool {
        self.h0_nondegenerate && self.h2_cauchy_stable && self.h3_consistent && self.a0_interior
    }

    /// Names of the failed checks, in a fixed order.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.h0_nondegenerate {
            out.push("non-degeneracy");
        }
        if !self.h2_cauchy_stable {
            out.push("cauchy-stability");
        }
        if !self.h3_consistent {
            out.push("consistency");
        }
        if !self.a0_interior {
            out.push("|a0| < 1");
        }
        out
    }
}

/// Ordered sampling of a closed complex curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSamples {
    pub params: Vec<f64>,
    pub points: Vec<Complex64>,
    pub closed: bool,
}

impl CurveSamples {
    /// Samples `f` at `n + 1` uniform parameters over `[0, 2 pi]`.
    pub fn sample(n: usize, f: impl Fn(f64) -> Complex64) -> Self {
        let n = n.max(1);
        let params: Vec<f64> = (0..=n).map(|i| 2.0 * PI * i as f64 / n as f64).collect();
        let points: Vec<Complex64> = params.iter().map(|&t| f(t)).collect();
        let closed = (points[0] - points[n]).norm() <= 1e-12 * (1.0 + points[0].norm());
        Self {
            params,
            points,
            closed,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// CSV with header `theta,re,im`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta,re,im\n");
        for (t, p) in self.params.iter().zip(&self.points) {
            out.push_str(&format!("{},{},{}\n", t, p.re, p.im));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beam_warming_coefficients() {
        let s = Scheme::beam_warming(0.5).unwrap();
        assert_eq!(s.coeffs(), &[-0.125, 0.75, 0.375]);
        assert_eq!(s.r(), 2);

        let s = Scheme::beam_warming(1.0).unwrap();
        assert_eq!(s.coeffs(), &[1.0, 0.0]);
        assert_eq!(s.r(), 1);
        assert!(s.validate(256, DEFAULT_CAUCHY_TOL).h0_nondegenerate);

        let s = Scheme::beam_warming(2.0).unwrap();
        assert_eq!(s.coeffs(), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Scheme::new(vec![0.0, 0.0], 1.0),
            Err(SchemeError::EmptyStencil)
        );
        assert_eq!(
            Scheme::beam_warming(0.0),
            Err(SchemeError::InvalidLambda(0.0))
        );
        assert!(Scheme::new(vec![f64::NAN, 1.0], 1.0).is_err());
    }

    #[test]
    fn symbol_examples() {
        let s = Scheme::beam_warming(0.7).unwrap();
        assert!((s.symbol(0.0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let shift = Scheme::beam_warming(2.0).unwrap();
        assert!((shift.symbol(PI / 2.0) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn symbol_modulus_closed_form() {
        for &lambda in &[0.3, 0.9, 1.4, 1.8, 2.3] {
            let s = Scheme::beam_warming(lambda).unwrap();
            for i in 0..50 {
                let xi = i as f64 * 0.13;
                let lhs = s.symbol(xi).norm_sqr();
                let rhs = 1.0
                    - lambda * (2.0 - lambda) * (lambda - 1.0).powi(2) * (1.0 - xi.cos()).powi(2);
                assert!((lhs - rhs).abs() < 1e-12, "lambda {lambda} xi {xi}");
            }
        }
    }

    #[test]
    fn validate_examples() {
        let rep = Scheme::beam_warming(1.5)
            .unwrap()
            .validate(4096, DEFAULT_CAUCHY_TOL);
        assert!(rep.all_pass(), "{rep:?}");

        let rep = Scheme::beam_warming(2.1)
            .unwrap()
            .validate(4096, DEFAULT_CAUCHY_TOL);
        assert!(!rep.h2_cauchy_stable);
        assert!(rep.max_symbol_modulus > 1.0);

        let rep = Scheme::new(vec![0.5, 0.5], 1.0)
            .unwrap()
            .validate(64, DEFAULT_CAUCHY_TOL);
        assert!(!rep.h3_consistent);
        assert!((rep.consistency_residual).abs() < 1e-15);
        assert!((rep.order_residual - 0.5).abs() < 1e-15);
    }

    #[test]
    fn symbol_curve_samples() {
        let c = Scheme::beam_warming(2.0).unwrap().symbol_curve(4);
        let expected = [1.0, -1.0, 1.0, -1.0, 1.0];
        for (p, e) in c.points.iter().zip(expected) {
            assert!((p - Complex64::new(e, 0.0)).norm() < 1e-12);
        }
        assert!(c.closed);

        let c = Scheme::beam_warming(1.8).unwrap().symbol_curve(100);
        assert_eq!(c.points[0], Complex64::new(1.0, 0.0));
        assert!(c.points.iter().all(|p| p.norm() <= 1.0 + 1e-12));
    }

    #[test]
    fn curve_csv_header() {
        let csv = Scheme::beam_warming(0.5).unwrap().symbol_curve(16).to_csv();
        assert!(csv.starts_with("theta,re,im\n0,1,0\n"));
        assert_eq!(csv.lines().count(), 18);
    }
}
