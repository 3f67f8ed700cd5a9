//! Character map of strong stability over the CFL number and the boundary
//! misalignment `sigma`. `.` is stable, digits count exterior zeros, `*` marks
//! zeros on the circle and `x` violated assumptions.
//!
//! `cargo run --release --example sigma_map -- [out.csv]`

use std::error::Error;
use std::fmt::Write;

use upwind_gks::analyzer::{
    beam_warming_family, sweep, uniform_grid, AnalysisConfig, StabilityMap,
};
use upwind_gks::{BoundaryCondition, StabilityStatus};

pub fn compute() -> StabilityMap {
    let lambdas = uniform_grid(0.05, 2.0, 0.05);
    let sigmas = uniform_grid(-0.5, 0.48, 0.02);
    let bc = |_lambda: f64, sigma: f64| BoundaryCondition::silw(2, 2, 3, sigma);
    sweep(
        beam_warming_family,
        bc,
        &lambdas,
        &sigmas,
        &AnalysisConfig::default(),
        0,
    )
}

pub fn render(map: &StabilityMap) -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    for (is, sigma) in map.sigma_grid.iter().enumerate().rev() {
        write!(out, "{sigma:+.2} ")?;
        for cell in map.lambda_row(is) {
            let c = match cell.status {
                StabilityStatus::StronglyStable => '.',
                StabilityStatus::UnstableExteriorEigenvalue => {
                    char::from_digit(cell.zero_count.clamp(0, 9) as u32, 10).unwrap_or('9')
                }
                StabilityStatus::UnstableBoundaryZero => '*',
                StabilityStatus::AssumptionViolated => 'x',
                StabilityStatus::Inconclusive => '?',
            };
            out.push(c);
        }
        out.push('\n');
    }
    writeln!(
        out,
        "      lambda {} .. {} step 0.05",
        map.lambda_grid[0],
        map.lambda_grid.last().unwrap()
    )?;
    Ok(out)
}

pub fn run() -> Result<String, Box<dyn Error>> {
    render(&compute())
}

fn main() -> Result<(), Box<dyn Error>> {
    let map = compute();
    print!("{}", render(&map)?);
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, map.to_csv())?;
        println!("map written to {path}");
    }
    Ok(())
}
