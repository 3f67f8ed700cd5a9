//! Verdicts for Beam-Warming closed by S2ILW3 at a handful of CFL numbers.
//!
//! `cargo run --example check_stability`

use std::error::Error;
use std::fmt::Write;

use upwind_gks::analyzer::{analyze, AnalysisConfig};
use upwind_gks::{BoundaryCondition, Scheme};

pub fn run() -> Result<String, Box<dyn Error>> {
    let cfg = AnalysisConfig::default();
    let bc = BoundaryCondition::silw(2, 2, 3, 0.0)?;
    let mut out = String::new();
    for lambda in [0.5, 0.99, 1.0, 1.3, 1.6, 1.9, 2.1] {
        let s = Scheme::beam_warming(lambda)?;
        let v = analyze(&s, &bc, &cfg);
        let zeros = v
            .exterior_zero_count
            .map_or("-".to_string(), |c| c.to_string());
        writeln!(
            out,
            "lambda = {lambda:<5} {:<28} exterior zeros: {zeros}",
            v.status.as_str()
        )?;
        for bz in &v.boundary_zeros {
            writeln!(
                out,
                "    zero on the circle at {:.6}: {:?}",
                bz.z0, bz.classification
            )?;
        }
        for note in &v.diagnostics.notes {
            writeln!(out, "    note: {note}")?;
        }
    }
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run()?);
    Ok(())
}
