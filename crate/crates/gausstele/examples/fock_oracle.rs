//! The truncated-Fock oracle agreeing with the covariance-level algebra:
//! channel kernels reproduce predicted second moments, and the noisy-TMSV
//! overlap lands on its closed form.
//!
//! Run with: cargo run --example fock_oracle

use gausstele::channel::GaussianChannel;
use gausstele::fock::{apply_teleport_channel_fock, make_tmsv_fock, NumberKernel};
use gausstele::symplectic::make_tmsv_state;

fn main() -> gausstele::Result<()> {
    let (n_s, sigma, cutoff) = (1.0, 0.5, 40);

    let probe = make_tmsv_fock(n_s, cutoff)?;
    let (out, leak) = apply_teleport_channel_fock(&probe, sigma, 1)?;
    println!("teleport T[σ̄={sigma}] on one arm of Φ({n_s}) at cutoff {cutoff} (leak {leak:.1e})");
    let overlap = out.overlap_with_pure(&probe)?;
    println!(
        "  ⟨Φ|out|Φ⟩ = {overlap:.9}   closed form 1/(σ̄+2σ̄N_S+1) = {:.9}",
        1.0 / (sigma + 2.0 * sigma * n_s + 1.0)
    );

    // second moments of the Fock output vs the covariance prediction
    let (_, cov) = out.moments();
    let predicted =
        GaussianChannel::additive_noise(sigma)?.apply_on_subsystem(&make_tmsv_state(n_s)?, &[1])?;
    println!(
        "  max second-moment deviation from covariance algebra: {:.2e}",
        (&cov - predicted.cov()).amax()
    );

    // thermal kernel: vacuum in, thermal out
    let k = NumberKernel::thermal(0.5, 1.0, cutoff)?;
    let (thermal_out, _) = k.apply(&gausstele::fock::FockState::vacuum(1, cutoff), 0)?;
    println!(
        "\nthermal(0.5, 1.0) on vacuum: mean photon {:.6} (expect 0.5), purity {:.6}",
        thermal_out.mean_photon(0)?,
        thermal_out.purity()
    );
    Ok(())
}
