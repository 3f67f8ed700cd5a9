//! A user-supplied interior stencil and extrapolation matrix.
//!
//! First-order upwind `U_j^{n+1} = (1 - lambda) U_j + lambda U_{j-1}` with the
//! ghost value `U_{-1} = c U_0`. For `c = 1` the constant mode sits on the
//! circle at `z = 1`; for `|c| > 1` an exterior eigenvalue appears.
//!
//! `cargo run --example custom_boundary`

use std::error::Error;
use std::fmt::Write;

use upwind_gks::analyzer::{analyze, AnalysisConfig};
use upwind_gks::{BoundaryCondition, Scheme};

pub fn run() -> Result<String, Box<dyn Error>> {
    let lambda = 0.5;
    let s = Scheme::new(vec![lambda, 1.0 - lambda], lambda)?;
    let cfg = AnalysisConfig::default();
    let mut out = String::new();
    for c in [0.0, 0.5, 1.0, 1.5, 3.0] {
        let bc = BoundaryCondition::custom(vec![vec![c]])?;
        let v = analyze(&s, &bc, &cfg);
        write!(out, "U_-1 = {c} U_0: {}", v.status.as_str())?;
        for z in &v.diagnostics.exterior_roots {
            write!(out, ", exterior zero {z:.4}")?;
        }
        for bz in &v.boundary_zeros {
            write!(out, ", {:?} at {:.4}", bz.classification, bz.z0)?;
        }
        out.push('\n');
    }
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run()?);
    Ok(())
}
