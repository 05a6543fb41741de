//! Covariance-level channel algebra: composing a channel with teleportation
//! noise lands back in the same family with a shifted photon number, and the
//! thermal/amplifier dilations reproduce the direct action.
//!
//! Run with: cargo run --example channel_algebra

use gausstele::channel::{compose, dilate, GaussianChannel};
use gausstele::symplectic::GaussianState;
use gausstele::telesim::simulate;

fn main() -> gausstele::Result<()> {
    let sigma = 0.2;

    println!("thermal(η, N_B) ∘ T[σ̄={sigma}]  →  thermal(η, N_B + ησ̄/(1−η))");
    for (eta, n_b) in [(0.5, 1.0), (0.7, 0.0), (0.3, 2.0)] {
        let lhs = compose(
            &GaussianChannel::thermal(eta, n_b)?,
            &GaussianChannel::additive_noise(sigma)?,
        )?;
        let shifted = n_b + eta * sigma / (1.0 - eta);
        let rhs = GaussianChannel::thermal(eta, shifted)?;
        println!(
            "  η={eta:.1} N_B={n_b:.1}:  N_B′ = {shifted:.6}   |ΔY| = {:.2e}",
            (lhs.y() - rhs.y()).amax()
        );
    }

    println!("\nsimulate() knows the closed-form map:");
    let sim = simulate(&GaussianChannel::amplifier(2.0, 0.5)?, sigma)?;
    println!("  {}", sim.param_note);

    println!("\ndilation check: discard the environment, recover the channel");
    let ch = GaussianChannel::thermal(0.6, 0.8)?;
    let dil = dilate(&ch)?;
    let probe = GaussianState::thermal(1.3)?;
    let via_env = dil.apply(&probe)?;
    let direct = ch.apply(&probe)?;
    println!(
        "  thermal(0.6, 0.8) on θ(1.3): |ΔV| = {:.2e}, env = θ({:.1})",
        (via_env.cov() - direct.cov()).amax(),
        (dil.env_state.cov()[(0, 0)] - 1.0) / 2.0
    );
    Ok(())
}
