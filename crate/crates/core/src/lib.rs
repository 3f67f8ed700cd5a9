//! Strong (GKS) stability checks for explicit, one-step, totally upwind
//! finite-difference schemes for `u_t + a u_x = 0` on the half line.
//!
//! The pipeline is:
//!
//! 1. [`scheme::Scheme`] holds the interior stencil and validates the
//!    structural assumptions (non-degeneracy, Cauchy stability, consistency).
//! 2. [`boundary::BoundaryCondition`] holds the ghost-point extrapolation,
//!    typically from the simplified inverse Lax-Wendroff family.
//! 3. [`kl::reduce_boundary`] turns the pair into a polynomial `det C(z)` and
//!    an explicit rational Kreiss-Lopatinskii determinant.
//! 4. [`winding`] counts zeros outside the unit disk from the winding number
//!    of the determinant curve; [`kl::exterior_zero_count_direct`] counts them
//!    from the roots of `det C` as a cross-check.
//! 5. [`analyzer::analyze`] combines everything into a [`analyzer::StabilityVerdict`],
//!    and [`simulator`] runs the actual scheme to corroborate it.

use serde::{Deserialize, Serialize};

pub mod analyzer;
pub mod boundary;
pub mod cli;
pub mod kl;
pub mod poly;
pub mod scheme;
pub mod simulator;
pub mod winding;

pub use analyzer::{analyze, StabilityMap, StabilityStatus, StabilityVerdict};
pub use boundary::{BoundaryCondition, SilwParams};
pub use kl::{reduce_boundary, ReducedBoundary};
pub use poly::{Polynomial, RootSet};
pub use scheme::{CurveSamples, Scheme};

/// Numerical tolerances shared by the analysis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Computed roots closer than this are one multiple root.
    pub cluster_radius: f64,
    /// Half-width of the band around the unit circle treated as "on" it.
    pub unit_circle_tol: f64,
    /// Origin-on-curve threshold, relative to the curve's largest modulus.
    pub origin_tol: f64,
    /// Distance under which a point belongs to the symbol curve.
    pub gamma_tol: f64,
    /// Relative size under which a kernel-vector component counts as zero.
    pub kernel_tol: f64,
    /// Allowed excess of `|gamma|` above 1.
    pub cauchy_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            cluster_radius: poly::DEFAULT_CLUSTER_RADIUS,
            unit_circle_tol: 1e-6,
            origin_tol: 1e-8,
            gamma_tol: 1e-6,
            kernel_tol: 1e-7,
            cauchy_tol: scheme::DEFAULT_CAUCHY_TOL,
        }
    }
}
