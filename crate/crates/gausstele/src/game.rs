//! Monte Carlo referee for the teleportation discrimination game.
//!
//! A Referee flips a fair coin each round. Depending on the coin, a
//! Teleporter either applies a reference channel or its teleportation
//! simulation to the probe mode supplied by a Distinguisher; the Referee
//! then performs the optimal binary measurement and checks whether the
//! guess matches the coin. The Distinguisher wins if the match fraction
//! exceeds 3/4, and one player reveals its strategy to the other first.
//!
//! In the ideal variant the reference channel is the identity: whoever moves
//! second wins. Knowing the probe, the Teleporter can push the round success
//! probability toward 1/2; committed to a fixed `σ̄`, the Teleporter loses to
//! squeezed probes of growing energy. In the Gaussian variant the reference
//! channel is thermal, amplifier, or additive-noise; the uniform bounds give
//! the Teleporter a probe-independent guarantee, so the Teleporter wins under
//! either reveal order.
//!
//! Rounds are Bernoulli draws at the Helstrom success probability
//! `Pr{match} = ½(1 + ½‖ρ − σ‖₁)`. When only fidelity is available the
//! conservative endpoint of `1 − √F ≤ ½‖ρ−σ‖₁ ≤ √(1−F)` is used against the
//! player expected to win, so recorded wins are certified rather than
//! optimistic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::channel::{ChannelFamily, ChannelSpec};
use crate::fock::{
    fidelity_fock, make_basel_state, make_tmsv_fock, trace_distance_fock, FockState, NumberKernel,
    DEFAULT_ORACLE_CUTOFF,
};
use crate::metric::{fidelity_gaussian_zero_mean, fuchs_van_de_graaf_bounds};
use crate::symplectic::{make_tmsv_state, GaussianState};
use crate::telesim::{uniform_bound_additive, uniform_bound_amplifier, uniform_bound_thermal};
use crate::{Error, Result};

/// The fixed win threshold on the match fraction.
pub const WIN_THRESHOLD: f64 = 0.75;

fn default_version() -> u32 {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Player {
    Distinguisher,
    Teleporter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RevealOrder {
    DistinguisherFirst,
    TeleporterFirst,
}

/// Which channel pair the coin selects between.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GameVariant {
    /// identity vs `T[σ̄]`
    Ideal,
    /// `G` vs `G ∘ T[σ̄]` for a named Gaussian channel
    Gaussian { channel: ChannelSpec },
}

/// Probe states the Distinguisher can field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProbeSpec {
    Vacuum,
    Tmsv { n_s: f64 },
    Basel { cutoff: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DistinguisherStrategy {
    /// Play a fixed probe.
    Probe { probe: ProbeSpec },
    /// Knowing `σ̄`, pick a squeezed-vacuum photon number that certifies at
    /// least this round success probability (ideal variant).
    TmsvForTargetProb { target: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TeleporterStrategy {
    /// Commit to a fixed teleportation imperfection.
    FixedSigma { sigma: f64 },
    /// Knowing the probe, pick `σ̄` so the certified round success
    /// probability stays at or below this target (ideal variant).
    SigmaForTargetProb { target: f64 },
    /// Pick `σ̄` so the uniform simulation bound is at most this sine
    /// distance (Gaussian variant; probe-independent).
    SigmaForTargetBound { target_p: f64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameConfig {
    /// Scenario schema version; only 1 is understood.
    #[serde(default = "default_version")]
    pub version: u32,
    pub variant: GameVariant,
    pub reveal_order: RevealOrder,
    pub rounds: u64,
    pub rng_seed: u64,
    pub distinguisher_strategy: DistinguisherStrategy,
    pub teleporter_strategy: TeleporterStrategy,
    /// Must equal 3/4; present so scenario files state it explicitly.
    pub threshold: f64,
    /// Enables the exact Fock-oracle round probability when the probe is
    /// representable at this cutoff.
    #[serde(default)]
    pub oracle_cutoff: Option<usize>,
}

/// One round: the Referee's coin, the measurement-based guess, and whether
/// they matched.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RoundRecord {
    pub coin: bool,
    pub guess: bool,
    pub matched: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameTranscript {
    pub rounds: Vec<RoundRecord>,
    pub match_fraction: f64,
    pub winner: Player,
    pub per_round_success_prob: f64,
    pub probe: ProbeSpec,
    pub sigma_bar: f64,
    pub favored: Player,
    pub rng_seed: u64,
    pub threshold: f64,
}

impl GameTranscript {
    /// Recomputes the verdict from the recorded rounds alone.
    pub fn recompute_winner(&self) -> Player {
        let matches = self.rounds.iter().filter(|r| r.matched).count();
        let frac = matches as f64 / self.rounds.len().max(1) as f64;
        if frac > self.threshold {
            Player::Distinguisher
        } else {
            Player::Teleporter
        }
    }
}

/// Round success probability: exact where the trace distance is computable
/// at the configured cutoff, otherwise the two-sided interval from fidelity.
#[derive(Debug, Clone, Copy)]
pub struct RoundProbability {
    pub lower: f64,
    pub upper: f64,
    pub exact: Option<f64>,
}

impl RoundProbability {
    fn from_fidelity(f: f64) -> Result<Self> {
        let (lo, hi) = fuchs_van_de_graaf_bounds(f)?;
        Ok(Self {
            lower: 0.5 * (1.0 + lo),
            upper: 0.5 * (1.0 + hi),
            exact: None,
        })
    }

    /// The endpoint least favorable to `favored`, unless exact is known.
    pub fn resolve(&self, favored: Player) -> f64 {
        if let Some(p) = self.exact {
            return p;
        }
        match favored {
            // the Teleporter wants a small match probability, so charge it
            // with the upper endpoint, and vice versa
            Player::Teleporter => self.upper,
            Player::Distinguisher => self.lower,
        }
    }
}

/// The channel pair the coin selects between in a given game.
#[derive(Debug, Clone)]
pub enum ChannelPair {
    IdealVsTeleport { sigma: f64 },
    GaussianVsSimulated { channel: ChannelSpec, sigma: f64 },
}

fn probe_gaussian(probe: &ProbeSpec) -> Option<GaussianState> {
    match probe {
        ProbeSpec::Vacuum => Some(GaussianState::vacuum(1)),
        ProbeSpec::Tmsv { n_s } => make_tmsv_state(*n_s).ok(),
        ProbeSpec::Basel { .. } => None,
    }
}

/// Basel probes are defined at their own cutoff; the oracle cutoff applies
/// to the Gaussian probes.
fn effective_cutoff(probe: &ProbeSpec, oracle_cutoff: usize) -> usize {
    match probe {
        ProbeSpec::Basel { cutoff } => *cutoff,
        _ => oracle_cutoff,
    }
}

fn probe_fock(probe: &ProbeSpec, cutoff: usize) -> Result<FockState> {
    match probe {
        ProbeSpec::Vacuum => Ok(FockState::vacuum(1, cutoff)),
        ProbeSpec::Tmsv { n_s } => make_tmsv_fock(*n_s, cutoff),
        ProbeSpec::Basel { cutoff } => make_basel_state(*cutoff),
    }
}

fn family_kernel(spec: &ChannelSpec, cutoff: usize) -> Result<NumberKernel> {
    match spec.build()?.family() {
        Some(ChannelFamily::Thermal { eta, n_b }) => NumberKernel::thermal(*eta, *n_b, cutoff),
        Some(ChannelFamily::PureLoss { eta }) => NumberKernel::pure_loss(*eta, cutoff),
        Some(ChannelFamily::Amplifier { gain, n_b }) => {
            NumberKernel::amplifier(*gain, *n_b, cutoff)
        }
        Some(ChannelFamily::PureAmplifier { gain }) => NumberKernel::pure_amplifier(*gain, cutoff),
        Some(ChannelFamily::AdditiveNoise { xi }) => NumberKernel::teleport(*xi, cutoff),
        _ => Err(Error::UnsupportedChannel(
            "no Fock kernel for this channel".into(),
        )),
    }
}

fn simulated_spec(spec: &ChannelSpec, sigma: f64) -> Result<ChannelSpec> {
    Ok(match spec {
        ChannelSpec::Thermal { eta, n_b } => ChannelSpec::Thermal {
            eta: *eta,
            n_b: n_b + eta * sigma / (1.0 - eta),
        },
        ChannelSpec::PureLoss { eta } => ChannelSpec::Thermal {
            eta: *eta,
            n_b: eta * sigma / (1.0 - eta),
        },
        ChannelSpec::Amplifier { gain, n_b } => ChannelSpec::Amplifier {
            gain: *gain,
            n_b: n_b + gain * sigma / (gain - 1.0),
        },
        ChannelSpec::PureAmplifier { gain } => ChannelSpec::Amplifier {
            gain: *gain,
            n_b: gain * sigma / (gain - 1.0),
        },
        ChannelSpec::AdditiveNoise { xi } => ChannelSpec::AdditiveNoise { xi: xi + sigma },
        _ => {
            return Err(Error::UnsupportedChannel(
                "gaussian variant needs a named phase-insensitive channel".into(),
            ))
        }
    })
}

/// Helstrom round success probability for a probe against a channel pair.
///
/// Returns the exact value when the trace distance is computable in the
/// Fock oracle at `oracle_cutoff`; otherwise the fidelity interval.
pub fn round_success_probability(
    probe: &ProbeSpec,
    pair: &ChannelPair,
    oracle_cutoff: Option<usize>,
) -> Result<RoundProbability> {
    match pair {
        ChannelPair::IdealVsTeleport { sigma } => {
            let fidelity = match probe {
                ProbeSpec::Vacuum => 1.0 / (1.0 + sigma),
                ProbeSpec::Tmsv { n_s } => 1.0 / (sigma + 2.0 * sigma * n_s + 1.0),
                ProbeSpec::Basel { cutoff } => {
                    let red = crate::fock::make_basel_reduced(*cutoff)?;
                    1.0 - crate::fock::entanglement_infidelity_teleport(&red, *sigma)?
                }
            };
            let mut rp = RoundProbability::from_fidelity(fidelity.clamp(0.0, 1.0))?;
            if let Some(cut) = oracle_cutoff {
                if probe_oracle_ok(probe) {
                    let cut = effective_cutoff(probe, cut);
                    let st = probe_fock(probe, cut)?;
                    let target = st.modes() - 1;
                    let (out, _) = crate::fock::apply_teleport_channel_fock(&st, *sigma, target)?;
                    let t = trace_distance_fock(&st, &out)?;
                    rp.exact = Some(0.5 * (1.0 + t));
                }
            }
            Ok(rp)
        }
        ChannelPair::GaussianVsSimulated { channel, sigma } => {
            let sim = simulated_spec(channel, *sigma)?;
            let fidelity = match probe_gaussian(probe) {
                Some(st) => {
                    let ch1 = channel.build()?;
                    let ch2 = sim.build()?;
                    let target = st.modes() - 1;
                    let out1 = ch1.apply_on_subsystem(&st, &[target])?;
                    let out2 = ch2.apply_on_subsystem(&st, &[target])?;
                    fidelity_gaussian_zero_mean(&out1, &out2)?.fidelity
                }
                None => {
                    // Basel probe: Fock route at its stated cutoff
                    let cut =
                        effective_cutoff(probe, oracle_cutoff.unwrap_or(DEFAULT_ORACLE_CUTOFF));
                    let st = probe_fock(probe, cut)?;
                    let k1 = family_kernel(channel, cut)?;
                    let k2 = family_kernel(&sim, cut)?;
                    let (o1, _) = k1.apply(&st, 1)?;
                    let (o2, _) = k2.apply(&st, 1)?;
                    fidelity_fock(&o1, &o2)?
                }
            };
            let mut rp = RoundProbability::from_fidelity(fidelity)?;
            if let Some(cut) = oracle_cutoff {
                if probe_oracle_ok(probe) {
                    let cut = effective_cutoff(probe, cut);
                    let st = probe_fock(probe, cut)?;
                    let target = st.modes() - 1;
                    let k1 = family_kernel(channel, cut)?;
                    let k2 = family_kernel(&sim, cut)?;
                    let (o1, _) = k1.apply(&st, target)?;
                    let (o2, _) = k2.apply(&st, target)?;
                    let t = trace_distance_fock(&o1, &o2)?;
                    rp.exact = Some(0.5 * (1.0 + t));
                }
            }
            Ok(rp)
        }
    }
}

fn probe_oracle_ok(probe: &ProbeSpec) -> bool {
    match probe {
        ProbeSpec::Vacuum => true,
        // geometric tails make brighter probes untrustworthy here
        ProbeSpec::Tmsv { n_s } => *n_s <= 2.0,
        // matrix-level Basel work stays affordable below this
        ProbeSpec::Basel { cutoff } => *cutoff <= 80,
    }
}

/// Smallest `σ̄` whose uniform simulation bound meets `target_p`, by
/// bisection (residual below 1e-10). A target of zero is the unattained
/// infimum `σ̄ = 0`. The ideal channel is rejected: it has no uniform bound.
pub fn required_sigma_for_target(channel: &ChannelSpec, target_p: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&target_p) {
        return Err(Error::InvalidParameter(format!(
            "target sine distance must lie in [0,1), got {target_p}"
        )));
    }
    if target_p == 0.0 {
        return Ok(0.0);
    }
    let bound = |sigma: f64| -> Result<f64> {
        Ok(match channel {
            ChannelSpec::Thermal { eta, n_b } => {
                uniform_bound_thermal(*eta, *n_b, sigma)?.bound_value
            }
            ChannelSpec::PureLoss { eta } => uniform_bound_thermal(*eta, 0.0, sigma)?.bound_value,
            ChannelSpec::Amplifier { gain, n_b } => {
                uniform_bound_amplifier(*gain, *n_b, sigma)?.bound_value
            }
            ChannelSpec::PureAmplifier { gain } => {
                uniform_bound_amplifier(*gain, 0.0, sigma)?.bound_value
            }
            ChannelSpec::AdditiveNoise { xi } => uniform_bound_additive(*xi, sigma)?.bound_value,
            ChannelSpec::Identity { .. } | ChannelSpec::Raw { .. } => {
                return Err(Error::UnsupportedChannel(
                    "no uniform bound to invert for this channel".into(),
                ))
            }
        })
    };
    let mut hi = 1.0;
    while bound(hi)? < target_p {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::InvalidParameter(format!(
                "target {target_p} not reachable"
            )));
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let val = bound(mid)?;
        if (val - target_p).abs() < 1e-10 {
            return Ok(mid);
        }
        if val < target_p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Resolved parameters of a game, before any coins are flipped.
struct ResolvedGame {
    probe: ProbeSpec,
    sigma: f64,
    p_used: f64,
    favored: Player,
}

fn resolve(config: &GameConfig) -> Result<ResolvedGame> {
    match &config.variant {
        GameVariant::Ideal => resolve_ideal(config),
        GameVariant::Gaussian { channel } => resolve_gaussian(config, channel),
    }
}

fn resolve_ideal(config: &GameConfig) -> Result<ResolvedGame> {
    match config.reveal_order {
        RevealOrder::DistinguisherFirst => {
            // probe is committed; the teleporter reacts with σ̄
            let probe = match config.distinguisher_strategy {
                DistinguisherStrategy::Probe { probe } => probe,
                DistinguisherStrategy::TmsvForTargetProb { .. } => {
                    return Err(Error::Scenario(
                        "distinguisher moves first and must commit a probe".into(),
                    ))
                }
            };
            let sigma = match config.teleporter_strategy {
                TeleporterStrategy::FixedSigma { sigma } => sigma,
                TeleporterStrategy::SigmaForTargetProb { target } => {
                    sigma_for_round_target(&probe, target)?
                }
                TeleporterStrategy::SigmaForTargetBound { .. } => {
                    return Err(Error::Scenario(
                        "no uniform bound exists in the ideal variant".into(),
                    ))
                }
            };
            let rp = round_success_probability(
                &probe,
                &ChannelPair::IdealVsTeleport { sigma },
                config.oracle_cutoff,
            )?;
            Ok(ResolvedGame {
                probe,
                sigma,
                p_used: rp.resolve(Player::Teleporter),
                favored: Player::Teleporter,
            })
        }
        RevealOrder::TeleporterFirst => {
            let sigma = match config.teleporter_strategy {
                TeleporterStrategy::FixedSigma { sigma } => sigma,
                _ => {
                    return Err(Error::Scenario(
                        "teleporter moves first and must commit σ̄".into(),
                    ))
                }
            };
            let probe = match config.distinguisher_strategy {
                DistinguisherStrategy::Probe { probe } => probe,
                DistinguisherStrategy::TmsvForTargetProb { target } => {
                    tmsv_for_round_target(sigma, target)?
                }
            };
            let rp = round_success_probability(
                &probe,
                &ChannelPair::IdealVsTeleport { sigma },
                config.oracle_cutoff,
            )?;
            Ok(ResolvedGame {
                probe,
                sigma,
                p_used: rp.resolve(Player::Distinguisher),
                favored: Player::Distinguisher,
            })
        }
    }
}

fn resolve_gaussian(config: &GameConfig, channel: &ChannelSpec) -> Result<ResolvedGame> {
    // the uniform bound is probe independent, so the reveal order does not
    // change the teleporter's play
    let sigma = match config.teleporter_strategy {
        TeleporterStrategy::FixedSigma { sigma } => sigma,
        TeleporterStrategy::SigmaForTargetBound { target_p } => {
            required_sigma_for_target(channel, target_p)?
        }
        TeleporterStrategy::SigmaForTargetProb { .. } => {
            return Err(Error::Scenario(
                "per-probe σ̄ targeting belongs to the ideal variant; use the bound target".into(),
            ))
        }
    };
    let probe = match config.distinguisher_strategy {
        DistinguisherStrategy::Probe { probe } => probe,
        // the best squeezed probes approach the bound from below; fielding a
        // very bright one is the distinguisher's strongest available play
        DistinguisherStrategy::TmsvForTargetProb { .. } => ProbeSpec::Tmsv { n_s: 1e4 },
    };
    let rp = round_success_probability(
        &probe,
        &ChannelPair::GaussianVsSimulated {
            channel: channel.clone(),
            sigma,
        },
        config.oracle_cutoff,
    )?;
    Ok(ResolvedGame {
        probe,
        sigma,
        p_used: rp.resolve(Player::Teleporter),
        favored: Player::Teleporter,
    })
}

/// σ̄ such that the certified (worst-case) round probability for a known
/// probe is at most `target`: from `½(1+√(1−F)) ≤ t` invert
/// `F ≥ 1 − (2t−1)²`.
fn sigma_for_round_target(probe: &ProbeSpec, target: f64) -> Result<f64> {
    if !(0.5 < target && target < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "round-probability target must lie in (1/2, 1), got {target}"
        )));
    }
    let f_needed = 1.0 - (2.0 * target - 1.0).powi(2);
    match probe {
        ProbeSpec::Vacuum => Ok(1.0 / f_needed - 1.0),
        ProbeSpec::Tmsv { n_s } => Ok((1.0 / f_needed - 1.0) / (1.0 + 2.0 * n_s)),
        ProbeSpec::Basel { cutoff } => {
            // ε(σ̄) is monotone on the probed grid; bisect the quadrature
            let red = crate::fock::make_basel_reduced(*cutoff)?;
            let mut lo = 0.0;
            let mut hi = 1.0;
            while 1.0 - crate::fock::entanglement_infidelity_teleport(&red, hi)? > f_needed {
                hi *= 2.0;
            }
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let f = 1.0 - crate::fock::entanglement_infidelity_teleport(&red, mid)?;
                if f > f_needed {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok(lo.max(f64::MIN_POSITIVE))
        }
    }
}

/// Squeezed-probe photon number such that the certified round probability
/// at a committed `σ̄` is at least `target`: from `½(2−√F) ≥ t` invert
/// `F ≤ 4(1−t)²`.
fn tmsv_for_round_target(sigma: f64, target: f64) -> Result<ProbeSpec> {
    if !(0.5 < target && target < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "round-probability target must lie in (1/2, 1), got {target}"
        )));
    }
    if !(sigma > 0.0) {
        return Err(Error::InvalidParameter("σ̄ must be positive".into()));
    }
    let f_max = (2.0 * (1.0 - target)).powi(2);
    if f_max >= 1.0 {
        return Ok(ProbeSpec::Vacuum);
    }
    // F = 1/(σ̄(1+2N_S)+1) ≤ F_max, with 10% margin
    let n_s = 1.1 * ((1.0 / f_max - 1.0) / sigma - 1.0).max(0.0) / 2.0;
    Ok(ProbeSpec::Tmsv { n_s })
}

/// Plays one seeded game: i.i.d. Bernoulli rounds at the resolved success
/// probability. Identical config and seed give identical transcripts.
pub fn play_game(config: &GameConfig) -> Result<GameTranscript> {
    if config.version != 1 {
        return Err(Error::Scenario(format!(
            "unsupported scenario version {}",
            config.version
        )));
    }
    if (config.threshold - WIN_THRESHOLD).abs() > 1e-12 {
        return Err(Error::Scenario(format!(
            "threshold is fixed at {WIN_THRESHOLD}, got {}",
            config.threshold
        )));
    }
    if config.rounds == 0 {
        return Err(Error::Scenario("rounds must be ≥ 1".into()));
    }
    let resolved = resolve(config)?;
    if !(0.0..=1.0).contains(&resolved.p_used) {
        return Err(Error::InvalidParameter(format!(
            "round probability {} outside [0,1]",
            resolved.p_used
        )));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(config.rng_seed);
    let mut rounds = Vec::with_capacity(config.rounds as usize);
    let mut matches = 0u64;
    for _ in 0..config.rounds {
        let coin: bool = rng.gen();
        let matched = rng.gen::<f64>() < resolved.p_used;
        let guess = if matched { coin } else { !coin };
        if matched {
            matches += 1;
        }
        rounds.push(RoundRecord {
            coin,
            guess,
            matched,
        });
    }
    let match_fraction = matches as f64 / config.rounds as f64;
    let winner = if match_fraction > config.threshold {
        Player::Distinguisher
    } else {
        Player::Teleporter
    };
    Ok(GameTranscript {
        rounds,
        match_fraction,
        winner,
        per_round_success_prob: resolved.p_used,
        probe: resolved.probe,
        sigma_bar: resolved.sigma,
        favored: resolved.favored,
        rng_seed: config.rng_seed,
        threshold: config.threshold,
    })
}

/// Plays `n_games` independent games with per-game seeds derived from the
/// base seed by stream splitting; returns the fraction won by `player`.
pub fn win_frequency(config: &GameConfig, n_games: u64, player: Player) -> Result<f64> {
    let mut wins = 0u64;
    for i in 0..n_games {
        let mut cfg = config.clone();
        // derive independent per-game seeds from one master stream
        let mut seeder = ChaCha12Rng::seed_from_u64(config.rng_seed);
        seeder.set_stream(i);
        cfg.rng_seed = seeder.gen();
        if play_game(&cfg)?.winner == player {
            wins += 1;
        }
    }
    Ok(wins as f64 / n_games as f64)
}
