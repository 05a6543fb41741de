//! The multimode environment-state bound for a tensor product of thermal
//! channels, against its product-of-single-mode-fidelities construction.
//!
//! Run with: cargo run --example multimode_bounds

use gausstele::channel::GaussianChannel;
use gausstele::metric::fidelity_thermal_thermal;
use gausstele::telesim::{thermal_product_env, uniform_bound_multimode, TELEPORT_NOISE_SCALE};

fn main() -> gausstele::Result<()> {
    let etas = [0.5, 0.7];
    let nbs = [0.0, 1.0];
    let ch = GaussianChannel::thermal(etas[0], nbs[0])?
        .tensor(&GaussianChannel::thermal(etas[1], nbs[1])?);
    println!(
        "channel: thermal(η={}, N_B={}) ⊗ thermal(η={}, N_B={})\n",
        etas[0], nbs[0], etas[1], nbs[1]
    );
    println!(
        "{:>8}  {:>16}  {:>16}",
        "σ̄", "P(γ_E, γ_E′)", "product route"
    );
    for sigma in [0.5, 0.2, 0.1, 0.05, 0.01, 0.001] {
        let bound = uniform_bound_multimode(&ch, sigma, thermal_product_env(&etas))?;
        let mut f = 1.0;
        for (eta, nb) in etas.iter().zip(&nbs) {
            let shifted = nb + TELEPORT_NOISE_SCALE * sigma / (2.0 * (1.0 - eta));
            f *= fidelity_thermal_thermal(*nb, shifted)?.fidelity;
        }
        println!(
            "{sigma:>8}  {:>16.10}  {:>16.10}",
            bound.bound_value,
            (1.0 - f).sqrt()
        );
    }
    println!("\nidentity-like channels are rejected: no uniform bound exists for them.");
    let err = uniform_bound_multimode(
        &GaussianChannel::identity(1),
        0.1,
        thermal_product_env(&[0.5]),
    );
    println!(
        "identity: {}",
        err.err().map(|e| e.to_string()).unwrap_or_default()
    );
    Ok(())
}
