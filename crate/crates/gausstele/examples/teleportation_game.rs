//! The discrimination game under its three canonical setups: whoever moves
//! second wins against the identity channel, while the Teleporter wins both
//! reveal orders when the reference channel is a lossy Gaussian one.
//!
//! Run with: cargo run --example teleportation_game

use gausstele::channel::ChannelSpec;
use gausstele::game::{
    play_game, DistinguisherStrategy, GameConfig, GameVariant, ProbeSpec, RevealOrder,
    TeleporterStrategy,
};

fn main() -> gausstele::Result<()> {
    let fixtures = [
        (
            "ideal, distinguisher reveals first",
            GameConfig {
                version: 1,
                variant: GameVariant::Ideal,
                reveal_order: RevealOrder::DistinguisherFirst,
                rounds: 10_000,
                rng_seed: 101,
                distinguisher_strategy: DistinguisherStrategy::Probe {
                    probe: ProbeSpec::Tmsv { n_s: 1.0 },
                },
                teleporter_strategy: TeleporterStrategy::SigmaForTargetProb { target: 0.7 },
                threshold: 0.75,
                oracle_cutoff: None,
            },
        ),
        (
            "ideal, teleporter commits first",
            GameConfig {
                version: 1,
                variant: GameVariant::Ideal,
                reveal_order: RevealOrder::TeleporterFirst,
                rounds: 10_000,
                rng_seed: 202,
                distinguisher_strategy: DistinguisherStrategy::TmsvForTargetProb { target: 0.85 },
                teleporter_strategy: TeleporterStrategy::FixedSigma { sigma: 0.1 },
                threshold: 0.75,
                oracle_cutoff: None,
            },
        ),
        (
            "thermal(0.5, 0) reference, teleporter commits first",
            GameConfig {
                version: 1,
                variant: GameVariant::Gaussian {
                    channel: ChannelSpec::Thermal { eta: 0.5, n_b: 0.0 },
                },
                reveal_order: RevealOrder::TeleporterFirst,
                rounds: 10_000,
                rng_seed: 303,
                distinguisher_strategy: DistinguisherStrategy::TmsvForTargetProb { target: 0.9 },
                teleporter_strategy: TeleporterStrategy::SigmaForTargetBound { target_p: 0.03 },
                threshold: 0.75,
                oracle_cutoff: None,
            },
        ),
    ];
    for (name, cfg) in fixtures {
        let t = play_game(&cfg)?;
        println!("{name}:");
        println!(
            "  probe {:?}, σ̄ = {:.6}, round Pr{{match}} = {:.4}",
            t.probe, t.sigma_bar, t.per_round_success_prob
        );
        println!(
            "  match fraction {:.4} vs threshold {} → winner: {:?}\n",
            t.match_fraction, t.threshold, t.winner
        );
    }
    Ok(())
}
