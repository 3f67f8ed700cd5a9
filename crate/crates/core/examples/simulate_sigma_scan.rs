//! Time-domain sigma scans compared with the analyzer's verdicts.
//!
//! `cargo run --release --example simulate_sigma_scan -- [out-prefix]`

use std::error::Error;
use std::fmt::Write;

use upwind_gks::analyzer::{analyze, uniform_grid, AnalysisConfig};
use upwind_gks::simulator::{sigma_scan, BoundaryData, IbvpRun, SigmaScan};
use upwind_gks::{BoundaryCondition, Scheme, StabilityStatus};

pub fn scan(
    lambda: f64,
    cells: usize,
) -> Result<(SigmaScan, Vec<StabilityStatus>), Box<dyn Error>> {
    let s = Scheme::beam_warming(lambda)?;
    let sigmas = uniform_grid(-0.5, 0.48, 0.02);
    let run = IbvpRun::new(cells, 0.3, 1.0, BoundaryData::gaussian_pulse());
    let family = |sigma: f64| BoundaryCondition::silw(2, 2, 3, sigma);
    let result = sigma_scan(&s, family, &sigmas, &run, 0)?;
    let cfg = AnalysisConfig::default();
    let verdicts = sigmas
        .iter()
        .map(|&sg| Ok(analyze(&s, &family(sg)?, &cfg).status))
        .collect::<Result<Vec<_>, Box<dyn Error>>>()?;
    Ok((result, verdicts))
}

pub fn run_with(cells: usize, prefix: Option<&str>) -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    for lambda in [0.45, 0.6, 1.3, 1.69] {
        let (result, verdicts) = scan(lambda, cells)?;
        let (mut unstable, mut blown, mut stable, mut bounded) = (0, 0, 0, 0);
        for (row, status) in result.rows.iter().zip(&verdicts) {
            if status.is_unstable() {
                unstable += 1;
                blown += usize::from(row.max_amplitude > 10.0);
            } else if *status == StabilityStatus::StronglyStable {
                stable += 1;
                bounded += usize::from(row.max_amplitude < 2.0);
            }
        }
        writeln!(
            out,
            "lambda = {lambda:<5} unstable sigmas {unstable:>2} (amplitude > 10: {blown:>2}), stable {stable:>2} (amplitude < 2: {bounded:>2})"
        )?;
        if let Some(p) = prefix {
            std::fs::write(format!("{p}_{lambda}.csv"), result.to_csv())?;
        }
    }
    Ok(out)
}

pub fn run() -> Result<String, Box<dyn Error>> {
    run_with(1000, None)
}

fn main() -> Result<(), Box<dyn Error>> {
    let prefix = std::env::args().nth(1);
    print!("{}", run_with(1000, prefix.as_deref())?);
    Ok(())
}
