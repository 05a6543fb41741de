//! Failure of uniform convergence for the identity channel: at any fixed
//! σ̄ > 0, brighter two-mode squeezed probes drive the infidelity toward 1.
//!
//! Run with: cargo run --example uniform_divergence

use gausstele::fock::{make_tmsv_fock, NumberKernel};

fn main() -> gausstele::Result<()> {
    let sigma = 0.1;
    let cutoff = 60;
    let kernel = NumberKernel::teleport(sigma, cutoff)?;
    println!("σ̄ = {sigma} fixed; ε(σ̄, Φ(N_S)) = 1 − 1/(σ̄+2σ̄N_S+1)\n");
    println!("{:>8}  {:>12}  {:>12}", "N_S", "closed form", "fock oracle");
    for n_s in [0.0, 0.5, 1.0, 2.0, 10.0, 100.0, 1000.0] {
        let closed = 1.0 - 1.0 / (sigma + 2.0 * sigma * n_s + 1.0);
        let oracle = if n_s <= 2.0 {
            let probe = make_tmsv_fock(n_s, cutoff)?;
            let (out, _) = kernel.apply(&probe, 1)?;
            format!("{:.8}", 1.0 - out.overlap_with_pure(&probe)?)
        } else {
            "(beyond cutoff)".into()
        };
        println!("{n_s:>8}  {closed:>12.8}  {oracle:>12}");
    }
    Ok(())
}
