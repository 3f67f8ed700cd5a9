//! Numerical boundary conditions `U_j = sum_s b_{j,s} U_s + g_j` on the ghost
//! points `j = -r, ..., -1`, and the simplified inverse Lax-Wendroff family.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundaryError {
    #[error("invalid SILW order: kd = {kd}, d = {d} (need 0 <= kd <= d and d >= 1)")]
    InvalidOrder { kd: usize, d: usize },
    #[error("boundary needs at least one ghost row")]
    NoGhostRows,
    #[error("misalignment sigma = {0} outside [-1/2, 1/2)")]
    InvalidSigma(f64),
    #[error("boundary matrix rows must all have {expected} columns, row {row} has {found}")]
    RaggedMatrix {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("boundary matrix entry is not finite")]
    NonFinite,
    #[error("boundary has {have} ghost rows, stencil needs {need}")]
    GhostMismatch { have: usize, need: usize },
}

/// Simplified inverse Lax-Wendroff parameters: `kd` exact boundary-data
/// derivative terms, Taylor order `d`, misalignment `sigma`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SilwParams {
    pub kd: usize,
    pub d: usize,
    #[serde(default)]
    pub sigma: f64,
}

impl SilwParams {
    /// Conventional `SkILWd` label.
    pub fn label(&self) -> String {
        format!("S{}ILW{}", self.kd, self.d)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum BoundaryKind {
    Silw(SilwParams),
    /// Raw extrapolation matrix; no consistency-order check is performed.
    Custom,
}

/// Ghost-row extrapolation coefficients `b_{j,s}` for `j = -r..-1`,
/// `s = 0..m-1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCondition {
    /// Row `i` holds ghost index `j = i - r`.
    b: Vec<Vec<f64>>,
    m: usize,
    kind: BoundaryKind,
}

impl BoundaryCondition {
    /// SILW boundary for `r` ghost points:
    /// `b_{j,s} = sum_{k = max(kd, s)}^{d-1} (j+sigma)^k / k! * C(k,s) (-1)^{k-s}`.
    pub fn silw(r: usize, kd: usize, d: usize, sigma: f64) -> Result<Self, BoundaryError> {
        if d < 1 || kd > d {
            return Err(BoundaryError::InvalidOrder { kd, d });
        }
        if r == 0 {
            return Err(BoundaryError::NoGhostRows);
        }
        if !(-0.5..0.5).contains(&sigma) {
            return Err(BoundaryError::InvalidSigma(sigma));
        }
        let b = (0..r)
            .map(|i| {
                let offset = (i as f64 - r as f64) + sigma;
                (0..d)
                    .map(|s| {
                        (kd.max(s)..d)
                            .map(|k| {
                                let sign = if (k - s) % 2 == 0 { 1.0 } else { -1.0 };
                                offset.powi(k as i32) / factorial(k) * binomial(k, s) * sign
                            })
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            b,
            m: d,
            kind: BoundaryKind::Silw(SilwParams { kd, d, sigma }),
        })
    }

    /// Arbitrary extrapolation matrix; first row is the farthest ghost `j = -r`.
    pub fn custom(b: Vec<Vec<f64>>) -> Result<Self, BoundaryError> {
        let m = b.first().ok_or(BoundaryError::NoGhostRows)?.len();
        for (row, values) in b.iter().enumerate() {
            if values.len() != m {
                return Err(BoundaryError::RaggedMatrix {
                    row,
                    expected: m,
                    found: values.len(),
                });
            }
            if values.iter().any(|v| !v.is_finite()) {
                return Err(BoundaryError::NonFinite);
            }
        }
        Ok(Self {
            b,
            m,
            kind: BoundaryKind::Custom,
        })
    }

    pub fn r(&self) -> usize {
        self.b.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> &BoundaryKind {
        &self.kind
    }

    /// Extrapolation rows, farthest ghost first.
    pub fn rows(&self) -> &[Vec<f64>] {
        &self.b
    }

    /// `b_{j,s}` for `j` in `-r..=-1`.
    pub fn b(&self, j: isize, s: usize) -> f64 {
        self.b[(j + self.r() as isize) as usize][s]
    }

    /// Keeps the `r` ghost rows closest to the boundary (`j = -r..-1`).
    ///
    /// Used when the interior stencil shrinks, e.g. Beam-Warming at `lambda = 1`.
    pub fn restricted_to(&self, r: usize) -> Result<Self, BoundaryError> {
        if r == 0 {
            return Err(BoundaryError::NoGhostRows);
        }
        if r > self.r() {
            return Err(BoundaryError::GhostMismatch {
                have: self.r(),
                need: r,
            });
        }
        Ok(Self {
            b: self.b[self.r() - r..].to_vec(),
            m: self.m,
            kind: self.kind.clone(),
        })
    }

    /// `B = [I_r | -b]`, of size `r x (r + m)`.
    pub fn assemble(&self) -> DMatrix<f64> {
        let r = self.r();
        DMatrix::from_fn(r, r + self.m, |i, col| {
            if col < r {
                if i == col {
                    1.0
                } else {
                    0.0
                }
            } else {
                -self.b[i][col - r]
            }
        })
    }

    /// Weight of `g^{(k)}(t)` in ghost row `j`, or `None` when the boundary has
    /// no exact-derivative terms of that order.
    ///
    /// SILW rows use `(-(j + sigma) dx)^k / (k! a^k)` for `k < kd`.
    pub fn data_weight(&self, j: isize, k: usize, dx: f64, velocity: f64) -> Option<f64> {
        match self.kind {
            BoundaryKind::Silw(p) if k < p.kd => {
                let offset = j as f64 + p.sigma;
                Some((-offset * dx).powi(k as i32) / (factorial(k) * velocity.powi(k as i32)))
            }
            _ => None,
        }
    }

    /// Number of boundary-data derivatives the ghost rows consume.
    pub fn data_orders(&self) -> usize {
        match self.kind {
            BoundaryKind::Silw(p) => p.kd,
            BoundaryKind::Custom => 0,
        }
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s2ilw3_matrix() {
        let bc = BoundaryCondition::silw(2, 2, 3, 0.0).unwrap();
        assert_eq!(bc.rows()[1], vec![0.5, -1.0, 0.5]);
        assert_eq!(bc.rows()[0], vec![2.0, -4.0, 2.0]);
        let b = bc.assemble();
        let expected = DMatrix::from_row_slice(
            2,
            5,
            &[1.0, 0.0, -2.0, 4.0, -2.0, 0.0, 1.0, -0.5, 1.0, -0.5],
        );
        assert_eq!(b, expected);
    }

    #[test]
    fn no_extrapolation_terms() {
        let bc = BoundaryCondition::silw(2, 3, 3, 0.0).unwrap();
        assert!(bc.rows().iter().flatten().all(|&v| v == 0.0));
        let b = bc.assemble();
        assert_eq!(b.columns(0, 2).into_owned(), DMatrix::identity(2, 2));
    }

    #[test]
    fn misaligned_row() {
        let bc = BoundaryCondition::silw(2, 2, 3, 0.25).unwrap();
        let row = &bc.rows()[1];
        for (v, e) in row.iter().zip([0.28125, -0.5625, 0.28125]) {
            assert!((v - e).abs() < 1e-15);
        }
    }

    #[test]
    fn custom_assembly() {
        let bc = BoundaryCondition::custom(vec![vec![0.0, 0.0]]).unwrap();
        assert_eq!(
            bc.assemble(),
            DMatrix::from_row_slice(1, 3, &[1.0, 0.0, 0.0])
        );
        assert!(matches!(
            BoundaryCondition::custom(vec![vec![1.0], vec![1.0, 2.0]]),
            Err(BoundaryError::RaggedMatrix { .. })
        ));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            BoundaryCondition::silw(2, 4, 3, 0.0),
            Err(BoundaryError::InvalidOrder { .. })
        ));
        assert!(matches!(
            BoundaryCondition::silw(2, 0, 0, 0.0),
            Err(BoundaryError::InvalidOrder { .. })
        ));
        assert!(matches!(
            BoundaryCondition::silw(2, 1, 3, 0.5),
            Err(BoundaryError::InvalidSigma(_))
        ));
    }

    #[test]
    fn restriction_keeps_nearest_rows() {
        let bc = BoundaryCondition::silw(2, 2, 3, 0.0).unwrap();
        let one = bc.restricted_to(1).unwrap();
        assert_eq!(one.rows(), &[vec![0.5, -1.0, 0.5]]);
        assert_eq!(one.m(), 3);
        assert!(bc.restricted_to(3).is_err());
    }

    #[test]
    fn data_weights_match_ghost_updates() {
        // U_{-1} = g + dx g'/a + ..., U_{-2} = g + 2 dx g'/a + ...
        let bc = BoundaryCondition::silw(2, 2, 3, 0.0).unwrap();
        assert_eq!(bc.data_weight(-1, 0, 0.01, 2.0), Some(1.0));
        assert_eq!(bc.data_weight(-1, 1, 0.01, 2.0), Some(0.005));
        assert_eq!(bc.data_weight(-2, 1, 0.01, 2.0), Some(0.01));
        assert_eq!(bc.data_weight(-2, 2, 0.01, 2.0), None);
    }
}
