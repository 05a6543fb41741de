//! Driving the sweep machinery from code and writing the CSV contract that
//! the command-line `sweep` subcommand produces.
//!
//! Run with: cargo run --example sweep_to_csv

use gausstele::experiments::{run_sweep, ExperimentKind, SweepSpec};

fn main() -> gausstele::Result<()> {
    let spec = SweepSpec {
        version: 1,
        experiment: ExperimentKind::UniformDivergence,
        state: None,
        channel: None,
        sigma_grid: vec![0.1],
        n_s_grid: vec![0.0, 1.0, 2.0, 10.0, 100.0],
        cutoff: Some(40),
        rounds: None,
        seed: None,
        probes: vec![],
        trust_floor: None,
        output_path: None,
    };
    let table = run_sweep(&spec)?;
    let mut csv = Vec::new();
    table.write_csv(&spec, &mut csv)?;
    print!("{}", String::from_utf8_lossy(&csv));
    Ok(())
}
