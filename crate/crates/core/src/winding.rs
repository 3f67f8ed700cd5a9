//! Winding number of the origin around a sampled closed curve, with adaptive
//! midpoint insertion near the origin.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kl::ReducedBoundary;
use crate::scheme::CurveSamples;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WindingError {
    #[error("origin lies on the curve (closest approach {min_distance:e})")]
    OriginOnCurve { min_distance: f64 },
    #[error("refinement budget of {budget} evaluations exceeded")]
    RefinementBudgetExceeded { budget: usize },
    #[error("curve must be closed and have at least 3 points")]
    NotClosed,
}

/// Controls midpoint insertion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RefinementPolicy {
    /// Total curve evaluations allowed, including the initial samples.
    pub max_evaluations: usize,
    /// Origin tolerance relative to the largest sampled modulus.
    pub origin_tol: f64,
    /// Segments turning by more than this angle are split.
    pub max_turn: f64,
    /// Segments closer to the origin than `proximity * length` are split.
    pub proximity: f64,
}

impl Default for RefinementPolicy {
    fn default() -> Self {
        Self {
            max_evaluations: 1 << 16,
            origin_tol: 1e-8,
            max_turn: PI / 2.0,
            proximity: 4.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindingResult {
    /// Absent when the origin is on the curve.
    pub index: Option<i64>,
    /// Closest approach of the polygon to the origin.
    pub min_distance: f64,
    pub samples_used: usize,
    pub origin_on_curve: bool,
}

fn segment_distance(p: Complex64, q: Complex64) -> f64 {
    let d = q - p;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return p.norm();
    }
    let t = (-(p.re * d.re + p.im * d.im) / len2).clamp(0.0, 1.0);
    (p + d * t).norm()
}

fn needs_split(p: Complex64, q: Complex64, policy: &RefinementPolicy) -> bool {
    let turn = (q / p).arg().abs();
    let len = (q - p).norm();
    turn > policy.max_turn || segment_distance(p, q) < policy.proximity * len
}

/// Winding number of 0 around the curve `f` sampled initially at `curve`.
///
/// Segments that turn too sharply or pass close to the origin relative to
/// their length are bisected in parameter space (re-evaluating `f`) until
/// none remain or the budget is spent. The angle increments are then summed
/// in parameter order.
pub fn winding_number(
    curve: &CurveSamples,
    f: impl Fn(f64) -> Complex64,
    policy: &RefinementPolicy,
) -> Result<WindingResult, WindingError> {
    if !curve.closed || curve.len() < 3 {
        return Err(WindingError::NotClosed);
    }
    let mut params = curve.params.clone();
    let mut points = curve.points.clone();
    let mut evaluations = points.len();

    let scale = points.iter().map(|p| p.norm()).fold(0.0, f64::max);
    let origin_tol = policy.origin_tol * scale;
    let min_distance = |pts: &[Complex64]| {
        pts.windows(2)
            .map(|w| segment_distance(w[0], w[1]))
            .fold(f64::INFINITY, f64::min)
    };

    loop {
        let dist = min_distance(&points);
        if dist < origin_tol || points.iter().any(|p| *p == Complex64::new(0.0, 0.0)) {
            return Err(WindingError::OriginOnCurve { min_distance: dist });
        }
        let split: Vec<usize> = (0..points.len() - 1)
            .filter(|&i| needs_split(points[i], points[i + 1], policy))
            .collect();
        if split.is_empty() {
            break;
        }
        if evaluations + split.len() > policy.max_evaluations {
            return Err(WindingError::RefinementBudgetExceeded {
                budget: policy.max_evaluations,
            });
        }
        let mut new_params = Vec::with_capacity(params.len() + split.len());
        let mut new_points = Vec::with_capacity(points.len() + split.len());
        let mut next = split.iter().peekable();
        for i in 0..points.len() {
            new_params.push(params[i]);
            new_points.push(points[i]);
            if next.peek() == Some(&&i) {
                next.next();
                let t = 0.5 * (params[i] + params[i + 1]);
                new_params.push(t);
                new_points.push(f(t));
            }
        }
        evaluations += split.len();
        params = new_params;
        points = new_points;
    }

    let total: f64 = points.windows(2).map(|w| (w[1] / w[0]).arg()).sum();
    let index = (total / (2.0 * PI)).round();
    if (total - 2.0 * PI * index).abs() > 1e-6 {
        return Err(WindingError::RefinementBudgetExceeded {
            budget: policy.max_evaluations,
        });
    }
    Ok(WindingResult {
        index: Some(index as i64),
        min_distance: min_distance(&points),
        samples_used: evaluations,
        origin_on_curve: false,
    })
}

/// Samples the determinant curve `theta -> delta(e^{i theta})`, or its
/// normalized form `delta(z) / z^r` when `normalize` is set.
pub fn sample_kl_curve(rb: &ReducedBoundary, n0: usize, normalize: bool) -> CurveSamples {
    CurveSamples::sample(n0, |t| kl_curve_point(rb, t, normalize))
}

fn kl_curve_point(rb: &ReducedBoundary, theta: f64, normalize: bool) -> Complex64 {
    let z = Complex64::from_polar(1.0, theta);
    if normalize {
        rb.normalized_delta(z)
    } else {
        rb.delta(z)
    }
}

/// Exterior zero count from the argument principle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindingCount {
    pub count: i64,
    pub winding: WindingResult,
}

/// `-Ind(delta(z)/z^r)`, equivalently `r - Ind(delta)`.
pub fn exterior_zero_count_winding(
    rb: &ReducedBoundary,
    n0: usize,
    policy: &RefinementPolicy,
) -> Result<WindingCount, WindingError> {
    let curve = sample_kl_curve(rb, n0, true);
    let winding = winding_number(&curve, |t| kl_curve_point(rb, t, true), policy)?;
    Ok(WindingCount {
        count: -winding.index.expect("index present on success"),
        winding,
    })
}
