//! Exterior zero count of Beam-Warming + S2ILW3 along `lambda`, with bisected
//! endpoints of every stable interval.
//!
//! `cargo run --release --example cfl_sweep`

use std::error::Error;
use std::fmt::Write;

use upwind_gks::analyzer::{
    beam_warming_family, bisect_transition, silw_family, sweep, uniform_grid, AnalysisConfig,
};

pub fn run() -> Result<String, Box<dyn Error>> {
    let cfg = AnalysisConfig::default();
    let lambdas = uniform_grid(0.01, 1.99, 0.01);
    let bc = silw_family(2, 3);
    let map = sweep(beam_warming_family, &bc, &lambdas, &[0.0], &cfg, 0);

    let mut out = String::new();
    let mut last = None;
    for cell in map.lambda_row(0) {
        let key = (cell.zero_count, cell.status);
        if last != Some(key) {
            writeln!(
                out,
                "from lambda = {:<5} zeros {:>2}  {}",
                cell.lambda,
                cell.zero_count,
                cell.status.as_str()
            )?;
            last = Some(key);
        }
    }

    let step = 0.01;
    for (a, b) in map.stable_intervals(0) {
        let lo = if a - step > 0.0 {
            bisect_transition(&beam_warming_family, &bc, 0.0, a, a - step, &cfg, 30)
        } else {
            0.0
        };
        let hi = bisect_transition(&beam_warming_family, &bc, 0.0, b, b + step, &cfg, 30);
        writeln!(out, "stable for lambda in ]{lo:.4}, {hi:.4}[")?;
    }
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run()?);
    Ok(())
}
