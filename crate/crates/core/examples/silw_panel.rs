//! Stable CFL intervals of Beam-Warming for six SILW boundary variants.
//!
//! `cargo run --release --example silw_panel`

use std::error::Error;
use std::fmt::Write;

use upwind_gks::analyzer::{beam_warming_family, silw_family, sweep, uniform_grid, AnalysisConfig};
use upwind_gks::SilwParams;

pub const PANEL: [(usize, usize); 6] = [(1, 2), (2, 3), (1, 3), (1, 4), (2, 4), (3, 4)];

pub fn run() -> Result<String, Box<dyn Error>> {
    let cfg = AnalysisConfig::default();
    let lambdas = uniform_grid(0.01, 2.0, 0.01);
    let mut out = String::new();
    for (kd, d) in PANEL {
        let map = sweep(
            beam_warming_family,
            silw_family(kd, d),
            &lambdas,
            &[0.0],
            &cfg,
            0,
        );
        let intervals: Vec<String> = map
            .stable_intervals(0)
            .iter()
            .map(|(a, b)| format!("[{a:.2}, {b:.2}]"))
            .collect();
        let label = SilwParams { kd, d, sigma: 0.0 }.label();
        writeln!(
            out,
            "{label:<7} stable grid points: {}",
            intervals.join(" ")
        )?;
    }
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run()?);
    Ok(())
}
