//! Teleportation simulation `G ↦ G ∘ T[σ̄]` and its uniform convergence
//! bounds.
//!
//! Simulating a channel through imperfect teleportation prepends the
//! additive-noise channel `T[σ̄]`; for the named families the result is the
//! same family with a shifted noise parameter:
//!
//! - thermal: `N_B′ = N_B + ησ̄/(1−η)`
//! - amplifier: `N_B″ = N_B + Gσ̄/(G−1)`
//! - additive noise: `ξ′ = ξ + σ̄`
//!
//! Because these channels can be realized by coupling to an environment
//! state that depends on the noise parameter alone, the sine distance between
//! the original and simulated channel — uniformly over all input states,
//! including entangled references — is at most the distance between the two
//! environment states. That is the content of the bound evaluators here. For
//! the identity channel no such environment exists and no uniform bound holds
//! (the simulation converges only strongly).

use serde::{Deserialize, Serialize};

use crate::channel::{compose, ChannelFamily, GaussianChannel};
use crate::metric::{
    fidelity_classical_gaussian, fidelity_gaussian_zero_mean, fidelity_thermal_thermal,
};
use crate::symplectic::{GaussianState, SymplecticForm};
use crate::{Error, Result};

/// Teleportation noise enters the covariance matrix as `Y ↦ Y + c·σ̄·I` with
/// this scale, fixed by the vacuum-covariance convention (`T[σ̄]` has
/// `Y = 2σ̄ I`). All multimode bound evaluations use the same constant.
pub const TELEPORT_NOISE_SCALE: f64 = 2.0;

/// A channel together with its teleportation simulation at a given `σ̄`.
#[derive(Debug, Clone)]
pub struct SimulationMap {
    pub original: GaussianChannel,
    pub sigma_bar: f64,
    pub simulated: GaussianChannel,
    /// Closed-form identity applied, when the family is recognized.
    pub param_note: String,
}

impl SimulationMap {
    /// The named family of the simulated channel, when recognized.
    pub fn simulated_family(&self) -> Option<ChannelFamily> {
        recognized_simulation(self.original.family()?, self.sigma_bar)
    }
}

fn recognized_simulation(family: &ChannelFamily, sigma: f64) -> Option<ChannelFamily> {
    match family {
        ChannelFamily::Thermal { eta, n_b } => Some(ChannelFamily::Thermal {
            eta: *eta,
            n_b: n_b + eta * sigma / (1.0 - eta),
        }),
        ChannelFamily::PureLoss { eta } => Some(ChannelFamily::Thermal {
            eta: *eta,
            n_b: eta * sigma / (1.0 - eta),
        }),
        ChannelFamily::Amplifier { gain, n_b } => Some(ChannelFamily::Amplifier {
            gain: *gain,
            n_b: n_b + gain * sigma / (gain - 1.0),
        }),
        ChannelFamily::PureAmplifier { gain } => Some(ChannelFamily::Amplifier {
            gain: *gain,
            n_b: gain * sigma / (gain - 1.0),
        }),
        ChannelFamily::AdditiveNoise { xi } => {
            Some(ChannelFamily::AdditiveNoise { xi: xi + sigma })
        }
        ChannelFamily::Product(parts) => {
            let mapped: Option<Vec<_>> = parts
                .iter()
                .map(|p| recognized_simulation(p, sigma))
                .collect();
            Some(ChannelFamily::Product(mapped?))
        }
        ChannelFamily::Identity => None,
    }
}

/// Builds the teleportation simulation of a channel: `G ∘ T[σ̄]` at the
/// `(X, Y, d)` level, with the closed-form parameter map noted for
/// recognized families.
pub fn simulate(channel: &GaussianChannel, sigma_bar: f64) -> Result<SimulationMap> {
    if !(sigma_bar > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "teleportation variance must be > 0, got {sigma_bar}"
        )));
    }
    let noise = GaussianChannel::additive_noise_modes(channel.modes(), sigma_bar)?;
    let simulated = compose(channel, &noise)?;
    let param_note = match channel
        .family()
        .and_then(|f| recognized_simulation(f, sigma_bar))
    {
        Some(target) => format!(
            "{} ∘ teleport(sigma={sigma_bar}) = {}",
            channel
                .family()
                .map(|f| f.describe())
                .unwrap_or_else(|| "channel".into()),
            target.describe()
        ),
        None => format!("raw (X, Y + {TELEPORT_NOISE_SCALE}σ̄·XᵀX, d) composition"),
    };
    Ok(SimulationMap {
        original: channel.clone(),
        sigma_bar,
        simulated,
        param_note,
    })
}

/// Which closed-form bound produced a [`BoundReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Thermal,
    PureLoss,
    Amplifier,
    PureAmplifier,
    AdditiveNoise,
    Multimode,
}

impl BoundKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundKind::Thermal => "thermal",
            BoundKind::PureLoss => "pure_loss",
            BoundKind::Amplifier => "amplifier",
            BoundKind::PureAmplifier => "pure_amplifier",
            BoundKind::AdditiveNoise => "additive_noise",
            BoundKind::Multimode => "multimode",
        }
    }
}

/// An evaluated uniform convergence bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound_kind: BoundKind,
    pub channel_descriptor: String,
    pub sigma_bar: f64,
    /// Sine distance bound, in `[0, 1]`.
    pub bound_value: f64,
}

impl BoundReport {
    pub fn csv_header() -> &'static str {
        "kind,channel,sigma_bar,bound_value"
    }

    pub fn csv_row(&self) -> String {
        // minimal CSV quoting: descriptors carry commas
        let channel = if self.channel_descriptor.contains(',') {
            format!("\"{}\"", self.channel_descriptor.replace('"', "\"\""))
        } else {
            self.channel_descriptor.clone()
        };
        format!(
            "{},{},{:.16e},{:.16e}",
            self.bound_kind.as_str(),
            channel,
            self.sigma_bar,
            self.bound_value
        )
    }
}

/// Uniform bound `e(N_B, η, σ̄) = P(θ(N_B), θ(N_B + ησ̄/(1−η)))` for the
/// teleportation simulation of a thermal channel.
pub fn uniform_bound_thermal(eta: f64, n_b: f64, sigma_bar: f64) -> Result<BoundReport> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "thermal bound needs η ∈ (0,1), got {eta}"
        )));
    }
    if !(n_b >= 0.0) || !(sigma_bar > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "thermal bound needs N_B ≥ 0 and σ̄ > 0, got ({n_b}, {sigma_bar})"
        )));
    }
    let shifted = n_b + eta * sigma_bar / (1.0 - eta);
    let p = fidelity_thermal_thermal(n_b, shifted)?.p_distance;
    Ok(BoundReport {
        bound_kind: if n_b == 0.0 {
            BoundKind::PureLoss
        } else {
            BoundKind::Thermal
        },
        channel_descriptor: format!("thermal(eta={eta}, n_b={n_b})"),
        sigma_bar,
        bound_value: p,
    })
}

/// Uniform bound `e(N_B, G, σ̄) = P(θ(N_B), θ(N_B + Gσ̄/(G−1)))` for the
/// teleportation simulation of an amplifier channel.
pub fn uniform_bound_amplifier(gain: f64, n_b: f64, sigma_bar: f64) -> Result<BoundReport> {
    if !(gain > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "amplifier bound needs G > 1, got {gain}"
        )));
    }
    if !(n_b >= 0.0) || !(sigma_bar > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "amplifier bound needs N_B ≥ 0 and σ̄ > 0, got ({n_b}, {sigma_bar})"
        )));
    }
    let shifted = n_b + gain * sigma_bar / (gain - 1.0);
    let p = fidelity_thermal_thermal(n_b, shifted)?.p_distance;
    Ok(BoundReport {
        bound_kind: if n_b == 0.0 {
            BoundKind::PureAmplifier
        } else {
            BoundKind::Amplifier
        },
        channel_descriptor: format!("amplifier(gain={gain}, n_b={n_b})"),
        sigma_bar,
        bound_value: p,
    })
}

/// Uniform bound `√(1 − 4ξ(ξ+σ̄)/(2ξ+σ̄)²)` for the teleportation simulation
/// of the additive-noise channel of variance `ξ > 0`. The `ξ → 0` limit is
/// the identity channel, whose simulation does not converge uniformly, so
/// `ξ = 0` is rejected.
pub fn uniform_bound_additive(xi: f64, sigma_bar: f64) -> Result<BoundReport> {
    if !(xi > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "additive-noise bound needs ξ > 0 (the identity has no uniform bound), got {xi}"
        )));
    }
    if !(sigma_bar > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "additive-noise bound needs σ̄ > 0, got {sigma_bar}"
        )));
    }
    let p = fidelity_classical_gaussian(xi, xi + sigma_bar)?.p_distance;
    Ok(BoundReport {
        bound_kind: BoundKind::AdditiveNoise,
        channel_descriptor: format!("additive-noise(xi={xi})"),
        sigma_bar,
        bound_value: p,
    })
}

/// Multimode uniform bound `P(γ_E(Y), γ_E(Y + 2σ̄I))` for a channel whose
/// environment realization is supplied by `env_builder` (mapping a noise
/// matrix to the corresponding environment state).
///
/// Requires `Ω − XᵀΩX` to be full rank (smallest singular value ≥ 1e-10);
/// rank-deficient channels — the identity in particular — admit no
/// environment realization of this kind and converge only strongly.
pub fn uniform_bound_multimode<F>(
    channel: &GaussianChannel,
    sigma_bar: f64,
    env_builder: F,
) -> Result<BoundReport>
where
    F: Fn(&nalgebra::DMatrix<f64>) -> Result<GaussianState>,
{
    if !(sigma_bar > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "multimode bound needs σ̄ > 0, got {sigma_bar}"
        )));
    }
    let omega = SymplecticForm::new(channel.modes()).matrix().clone();
    let gap = &omega - channel.x().transpose() * &omega * channel.x();
    let min_sv = gap
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    if min_sv < 1e-10 {
        return Err(Error::UnsupportedChannel(format!(
            "Ω − XᵀΩX is rank deficient (min singular value {min_sv:.3e}); \
             identity-like channels converge strongly but not uniformly"
        )));
    }
    let n = 2 * channel.modes();
    let env1 = env_builder(channel.y())?;
    let noisy =
        channel.y() + nalgebra::DMatrix::identity(n, n) * (TELEPORT_NOISE_SCALE * sigma_bar);
    let env2 = env_builder(&noisy)?;
    let p = fidelity_gaussian_zero_mean(&env1, &env2)?.p_distance;
    Ok(BoundReport {
        bound_kind: BoundKind::Multimode,
        channel_descriptor: format!("multimode({} modes)", channel.modes()),
        sigma_bar,
        bound_value: p,
    })
}

/// Environment-state builder for tensor products of thermal channels: reads
/// per-mode thermal photon numbers off the noise-matrix diagonal as
/// `N_i = (Y_ii/(1−η_i) − 1)/2`.
pub fn thermal_product_env(
    etas: &[f64],
) -> impl Fn(&nalgebra::DMatrix<f64>) -> Result<GaussianState> + '_ {
    move |y: &nalgebra::DMatrix<f64>| {
        let m = etas.len();
        if y.nrows() != 2 * m {
            return Err(Error::DimensionMismatch(format!(
                "noise matrix is {}x{} for {} modes",
                y.nrows(),
                y.ncols(),
                m
            )));
        }
        let mut state: Option<GaussianState> = None;
        for (i, eta) in etas.iter().enumerate() {
            let n_b = (y[(i, i)] / (1.0 - eta) - 1.0) / 2.0;
            if n_b < -1e-12 {
                return Err(Error::InvalidParameter(format!(
                    "noise diagonal {} implies negative photon number {n_b}",
                    y[(i, i)]
                )));
            }
            let th = GaussianState::thermal(n_b.max(0.0))?;
            state = Some(match state {
                None => th,
                Some(s) => s.tensor(&th),
            });
        }
        Ok(state.expect("at least one mode"))
    }
}

/// Telescoping bound for `n` parallel channel uses: the composite sine
/// distance is at most the sum of the per-use distances (capped at 1).
pub fn telescoping_bound_parallel(per_use_p: &[f64]) -> f64 {
    telescoping_sum(per_use_p)
}

/// Telescoping bound for serially composed channels: same arithmetic as the
/// parallel case, with the per-step distances taken at each step's input.
pub fn telescoping_bound_serial(per_use_p: &[f64]) -> f64 {
    telescoping_sum(per_use_p)
}

fn telescoping_sum(per_use_p: &[f64]) -> f64 {
    let sum: f64 = per_use_p
        .iter()
        .map(|p| {
            debug_assert!((0.0..=1.0 + 1e-12).contains(p), "P out of range: {p}");
            p.clamp(0.0, 1.0)
        })
        .sum();
    sum.min(1.0)
}
