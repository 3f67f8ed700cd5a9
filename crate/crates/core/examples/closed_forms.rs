//! `det C(z)` from the reduction next to the direct determinant, for
//! Beam-Warming + S2ILW3.
//!
//! `cargo run --example closed_forms`

use std::error::Error;
use std::fmt::Write;

use num_complex::Complex64;
use upwind_gks::kl::kl_det_direct;
use upwind_gks::{reduce_boundary, BoundaryCondition, Scheme, Tolerances};

pub fn run() -> Result<String, Box<dyn Error>> {
    let bc = BoundaryCondition::silw(2, 2, 3, 0.0)?;
    let z = Complex64::new(1.3, 0.4);
    let mut out = String::new();
    for lambda in [0.3, 0.7, 1.0, 1.6] {
        let s = Scheme::beam_warming(lambda)?;
        let bc = if s.r() < bc.r() {
            bc.restricted_to(s.r())?
        } else {
            bc.clone()
        };
        let rb = reduce_boundary(&s, &bc)?;
        let coeffs: Vec<String> = rb
            .det_c_coefficients()
            .iter()
            .map(|[re, _]| format!("{re:+.6}"))
            .collect();
        writeln!(
            out,
            "lambda = {lambda}: det C = [{}] (ascending powers of z)",
            coeffs.join(", ")
        )?;
        let explicit = rb.delta(z);
        let direct = kl_det_direct(&s, &bc, z, &Tolerances::default())?.delta;
        writeln!(
            out,
            "    delta({z}) explicit {explicit:.10}, direct {direct:.10}, relative gap {:.1e}",
            (explicit - direct).norm() / direct.norm()
        )?;
    }
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run()?);
    Ok(())
}
