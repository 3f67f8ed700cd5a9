//! Samples the normalized determinant curve and counts exterior zeros two ways.
//!
//! `cargo run --example kl_curve -- [lambda] [out.csv]`

use std::error::Error;
use std::fmt::Write;

use upwind_gks::kl::exterior_zero_count_direct;
use upwind_gks::winding::{exterior_zero_count_winding, sample_kl_curve, RefinementPolicy};
use upwind_gks::{reduce_boundary, BoundaryCondition, Scheme, Tolerances};

pub fn run_at(lambda: f64, csv: Option<&str>) -> Result<String, Box<dyn Error>> {
    let s = Scheme::beam_warming(lambda)?;
    let bc = BoundaryCondition::silw(2, 2, 3, 0.0)?;
    let rb = reduce_boundary(&s, &bc)?;

    let mut out = String::new();
    let coeffs: Vec<String> = rb
        .det_c_coefficients()
        .iter()
        .map(|[re, _]| format!("{re:.6}"))
        .collect();
    writeln!(out, "lambda = {lambda}")?;
    writeln!(
        out,
        "det C(z) coefficients (ascending): [{}]",
        coeffs.join(", ")
    )?;

    let w = exterior_zero_count_winding(&rb, 512, &RefinementPolicy::default())?;
    let d = exterior_zero_count_direct(&rb, &Tolerances::default())?;
    writeln!(
        out,
        "winding count {} ({} samples), root count {}",
        w.count, w.winding.samples_used, d.count
    )?;
    for z in &d.exterior_roots {
        writeln!(out, "    exterior zero {z:.6} (|z| = {:.6})", z.norm())?;
    }
    if let Some(path) = csv {
        std::fs::write(path, sample_kl_curve(&rb, 512, true).to_csv())?;
        writeln!(out, "curve written to {path}")?;
    }
    Ok(out)
}

pub fn run() -> Result<String, Box<dyn Error>> {
    Ok(run_at(0.7, None)? + &run_at(1.3, None)?)
}

fn main() -> Result<(), Box<dyn Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match args.first() {
        Some(l) => print!("{}", run_at(l.parse()?, args.get(1).map(String::as_str))?),
        None => print!("{}", run()?),
    }
    Ok(())
}
