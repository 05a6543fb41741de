//! Telescoping bounds for composed channel uses: the exact distance between
//! an adaptive protocol run over a channel versus over its simulation never
//! exceeds the sum of per-step bounds.
//!
//! Run with: cargo run --example adaptive_protocols

use gausstele::channel::ChannelSpec;
use gausstele::experiments::{run_sweep, ExperimentKind, StateSpec, SweepSpec};

fn main() -> gausstele::Result<()> {
    let spec = SweepSpec {
        version: 1,
        experiment: ExperimentKind::AdaptiveSerial,
        state: Some(StateSpec::Tmsv { n_s: 1.0 }),
        channel: Some(ChannelSpec::Thermal { eta: 0.6, n_b: 0.4 }),
        sigma_grid: vec![0.5, 0.2, 0.1, 0.05, 0.02],
        n_s_grid: vec![],
        cutoff: None,
        rounds: Some(3),
        seed: Some(11),
        probes: vec![],
        trust_floor: None,
        output_path: None,
    };
    let table = run_sweep(&spec)?;
    println!("3 uses of thermal(0.6, 0.4) with random symplectic adaptors in between\n");
    println!("{:>8}  {:>14}  {:>14}", "σ̄", "exact P", "Σ per-step e");
    for row in &table.rows {
        println!(
            "{:>8}  {:>14.8}  {:>14.8}",
            row.parameters[0].1,
            row.value,
            row.bound_value.unwrap()
        );
    }
    println!(
        "\nboth columns fall to zero with σ̄: the simulation converges strongly in any context."
    );
    Ok(())
}
