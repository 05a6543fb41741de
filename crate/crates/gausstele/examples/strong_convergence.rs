//! Strong (per-state) convergence: for any fixed input — even the
//! infinite-mean-photon Basel state — the teleportation infidelity falls to
//! zero as the imperfection σ̄ shrinks.
//!
//! Run with: cargo run --example strong_convergence

use gausstele::fock::{entanglement_infidelity_teleport, make_basel_reduced, make_thermal_fock};

fn main() -> gausstele::Result<()> {
    let grid = [1.0, 0.1, 0.01, 0.001];
    println!("ε(σ̄, ψ) for fixed inputs  (columns: σ̄ = {grid:?})\n");

    let vacuum = make_thermal_fock(0.0, 2)?;
    let mut row = vec!["vacuum".to_string()];
    for sigma in grid {
        row.push(format!(
            "{:.6}",
            entanglement_infidelity_teleport(&vacuum, sigma)?
        ));
    }
    println!("{}", row.join("  "));

    for n_s in [1.0, 4.0] {
        let reduced = make_thermal_fock(n_s, 2000)?;
        let mut row = vec![format!("tmsv({n_s})")];
        for sigma in grid {
            row.push(format!(
                "{:.6}",
                entanglement_infidelity_teleport(&reduced, sigma)?
            ));
        }
        println!("{}", row.join("  "));
    }

    let basel = make_basel_reduced(2000)?;
    let mut row = vec![format!("basel (weight {:.5})", basel.truncation_weight())];
    for sigma in grid {
        row.push(format!(
            "{:.6}",
            entanglement_infidelity_teleport(&basel, sigma)?
        ));
    }
    println!("{}", row.join("  "));

    println!("\nclosed forms: vacuum ε = σ̄/(1+σ̄); tmsv ε = 1 − 1/(σ̄+2σ̄N_S+1)");
    Ok(())
}
