//! Gaussian channels in the `(X, Y, d)` representation.
//!
//! A channel acts on moments as `μ ↦ Xᵀμ + d`, `V ↦ XᵀVX + Y` and is
//! completely positive iff `Y + i(Ω − XᵀΩX) ⪰ 0`. The named single-mode
//! families used throughout are
//!
//! | family          | X       | Y                    |
//! |-----------------|---------|----------------------|
//! | thermal `(η,N_B)`    | `√η I`  | `(1−η)(2N_B+1) I`    |
//! | amplifier `(G,N_B)`  | `√G I`  | `(G−1)(2N_B+1) I`    |
//! | additive noise `ξ`   | `I`     | `2ξ I`               |
//!
//! with pure loss and the pure amplifier as the `N_B = 0` special cases.
//! Thermal and amplifier channels carry a Stinespring-style dilation: a
//! beamsplitter (resp. two-mode squeezer) coupling to a thermal environment.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::symplectic::{
    beamsplitter_symplectic, two_mode_squeezer_symplectic, GaussianState, SymplecticForm,
};
use crate::{Error, Result};

/// Tolerance on the minimum eigenvalue of the complete-positivity matrix.
pub const CP_TOL: f64 = 1e-10;

/// Named parameterizations recognized by the closed-form machinery.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ChannelFamily {
    Identity,
    PureLoss {
        eta: f64,
    },
    Thermal {
        eta: f64,
        n_b: f64,
    },
    PureAmplifier {
        gain: f64,
    },
    Amplifier {
        gain: f64,
        n_b: f64,
    },
    AdditiveNoise {
        xi: f64,
    },
    /// Tensor product of single-mode families, one per mode.
    Product(Vec<ChannelFamily>),
}

impl ChannelFamily {
    pub fn describe(&self) -> String {
        match self {
            ChannelFamily::Identity => "identity".into(),
            ChannelFamily::PureLoss { eta } => format!("pure-loss(eta={eta})"),
            ChannelFamily::Thermal { eta, n_b } => format!("thermal(eta={eta}, n_b={n_b})"),
            ChannelFamily::PureAmplifier { gain } => format!("pure-amplifier(g={gain})"),
            ChannelFamily::Amplifier { gain, n_b } => format!("amplifier(g={gain}, n_b={n_b})"),
            ChannelFamily::AdditiveNoise { xi } => format!("additive-noise(xi={xi})"),
            ChannelFamily::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|f| f.describe()).collect();
                parts.join(" ⊗ ")
            }
        }
    }
}

/// An `m → m` Gaussian channel.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianChannel {
    modes: usize,
    x: DMatrix<f64>,
    y: DMatrix<f64>,
    d: DVector<f64>,
    family: Option<ChannelFamily>,
}

impl GaussianChannel {
    /// Builds a channel from raw `(X, Y, d)`, verifying symmetry of `Y` and
    /// complete positivity.
    pub fn from_parts(x: DMatrix<f64>, y: DMatrix<f64>, d: DVector<f64>) -> Result<Self> {
        let n = x.nrows();
        if n == 0 || !n.is_multiple_of(2) || x.ncols() != n || y.nrows() != n || y.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "X is {}x{}, Y is {}x{}",
                x.nrows(),
                x.ncols(),
                y.nrows(),
                y.ncols()
            )));
        }
        if d.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "d has length {}, expected {}",
                d.len(),
                n
            )));
        }
        if (&y - y.transpose()).amax() > 1e-12 {
            return Err(Error::InvalidChannel("Y is not symmetric".into()));
        }
        let ch = Self {
            modes: n / 2,
            x,
            y,
            d,
            family: None,
        };
        let defect = ch.cp_defect();
        if defect < -CP_TOL {
            return Err(Error::InvalidChannel(format!(
                "min eig of Y + i(Ω − XᵀΩX) is {defect:.6e}"
            )));
        }
        Ok(ch)
    }

    fn named(x: DMatrix<f64>, y: DMatrix<f64>, family: ChannelFamily) -> Self {
        let n = x.nrows();
        Self {
            modes: n / 2,
            x,
            y,
            d: DVector::zeros(n),
            family: Some(family),
        }
    }

    pub fn identity(modes: usize) -> Self {
        let n = 2 * modes;
        Self::named(
            DMatrix::identity(n, n),
            DMatrix::zeros(n, n),
            ChannelFamily::Identity,
        )
    }

    /// Thermal channel of transmissivity `η ∈ (0,1)` and environment photon
    /// number `N_B ≥ 0`.
    pub fn thermal(eta: f64, n_b: f64) -> Result<Self> {
        if !(eta > 0.0 && eta < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "thermal transmissivity must lie in (0,1), got {eta}"
            )));
        }
        if !(n_b >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "thermal photon number must be ≥ 0, got {n_b}"
            )));
        }
        let x = DMatrix::identity(2, 2) * eta.sqrt();
        let y = DMatrix::identity(2, 2) * ((1.0 - eta) * (2.0 * n_b + 1.0));
        Ok(Self::named(x, y, ChannelFamily::Thermal { eta, n_b }))
    }

    pub fn pure_loss(eta: f64) -> Result<Self> {
        let mut ch = Self::thermal(eta, 0.0)?;
        ch.family = Some(ChannelFamily::PureLoss { eta });
        Ok(ch)
    }

    /// Amplifier channel of gain `G > 1` and environment photon number `N_B`.
    pub fn amplifier(gain: f64, n_b: f64) -> Result<Self> {
        if !(gain > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "amplifier gain must exceed 1, got {gain}"
            )));
        }
        if !(n_b >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "amplifier photon number must be ≥ 0, got {n_b}"
            )));
        }
        let x = DMatrix::identity(2, 2) * gain.sqrt();
        let y = DMatrix::identity(2, 2) * ((gain - 1.0) * (2.0 * n_b + 1.0));
        Ok(Self::named(x, y, ChannelFamily::Amplifier { gain, n_b }))
    }

    pub fn pure_amplifier(gain: f64) -> Result<Self> {
        let mut ch = Self::amplifier(gain, 0.0)?;
        ch.family = Some(ChannelFamily::PureAmplifier { gain });
        Ok(ch)
    }

    /// Additive-noise channel of variance `ξ > 0`: `X = I`, `Y = 2ξI`. The
    /// teleportation channel `T[σ̄]` is exactly this with `ξ = σ̄`.
    pub fn additive_noise(xi: f64) -> Result<Self> {
        if !(xi > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "additive-noise variance must be > 0, got {xi}"
            )));
        }
        let x = DMatrix::identity(2, 2);
        let y = DMatrix::identity(2, 2) * (2.0 * xi);
        Ok(Self::named(x, y, ChannelFamily::AdditiveNoise { xi }))
    }

    /// Multi-mode additive noise: `X = I`, `Y = 2ξ I_{2m}`.
    pub fn additive_noise_modes(modes: usize, xi: f64) -> Result<Self> {
        if !(xi > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "additive-noise variance must be > 0, got {xi}"
            )));
        }
        let n = 2 * modes;
        let fam = ChannelFamily::Product(vec![ChannelFamily::AdditiveNoise { xi }; modes]);
        Ok(Self::named(
            DMatrix::identity(n, n),
            DMatrix::identity(n, n) * (2.0 * xi),
            if modes == 1 {
                ChannelFamily::AdditiveNoise { xi }
            } else {
                fam
            },
        ))
    }

    /// Tensor product; `self` acts on the first mode block.
    pub fn tensor(&self, other: &GaussianChannel) -> GaussianChannel {
        let m1 = self.modes;
        let m2 = other.modes;
        let m = m1 + m2;
        let map1: Vec<usize> = (0..m1).chain((0..m1).map(|i| m + i)).collect();
        let map2: Vec<usize> = (0..m2)
            .map(|j| m1 + j)
            .chain((0..m2).map(|j| m + m1 + j))
            .collect();
        let mut x = DMatrix::zeros(2 * m, 2 * m);
        let mut y = DMatrix::zeros(2 * m, 2 * m);
        let mut d = DVector::zeros(2 * m);
        for (blk, map) in [(self, &map1), (other, &map2)] {
            for (a, &ia) in map.iter().enumerate() {
                d[ia] = blk.d[a];
                for (b, &ib) in map.iter().enumerate() {
                    x[(ia, ib)] = blk.x[(a, b)];
                    y[(ia, ib)] = blk.y[(a, b)];
                }
            }
        }
        let family = match (&self.family, &other.family) {
            (Some(f1), Some(f2)) => {
                let mut parts = match f1 {
                    ChannelFamily::Product(v) => v.clone(),
                    f => vec![f.clone()],
                };
                match f2 {
                    ChannelFamily::Product(v) => parts.extend(v.iter().cloned()),
                    f => parts.push(f.clone()),
                }
                Some(ChannelFamily::Product(parts))
            }
            _ => None,
        };
        GaussianChannel {
            modes: m,
            x,
            y,
            d,
            family,
        }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }
    pub fn x(&self) -> &DMatrix<f64> {
        &self.x
    }
    pub fn y(&self) -> &DMatrix<f64> {
        &self.y
    }
    pub fn d(&self) -> &DVector<f64> {
        &self.d
    }
    pub fn family(&self) -> Option<&ChannelFamily> {
        self.family.as_ref()
    }

    /// Minimum eigenvalue of the Hermitian matrix `Y + i(Ω − XᵀΩX)`;
    /// non-negative (within tolerance) iff the map is a channel.
    pub fn cp_defect(&self) -> f64 {
        let n = 2 * self.modes;
        let omega = SymplecticForm::new(self.modes).matrix().clone();
        let m = &omega - self.x.transpose() * &omega * &self.x; // antisymmetric
        let mut embed = DMatrix::zeros(2 * n, 2 * n);
        embed.view_mut((0, 0), (n, n)).copy_from(&self.y);
        embed.view_mut((n, n), (n, n)).copy_from(&self.y);
        embed.view_mut((0, n), (n, n)).copy_from(&(-&m));
        embed.view_mut((n, 0), (n, n)).copy_from(&m);
        embed.symmetric_eigen().eigenvalues.min()
    }

    pub fn is_cp(&self) -> bool {
        self.cp_defect() >= -CP_TOL
    }

    /// Applies the channel to a state with matching mode count.
    pub fn apply(&self, state: &GaussianState) -> Result<GaussianState> {
        if state.modes() != self.modes {
            return Err(Error::DimensionMismatch(format!(
                "channel on {} modes applied to {}-mode state",
                self.modes,
                state.modes()
            )));
        }
        let mean = self.x.transpose() * state.mean() + &self.d;
        let cov = self.x.transpose() * state.cov() * &self.x + &self.y;
        GaussianState::new(mean, cov)
    }

    /// Embeds the channel on `target_modes` of a larger state (identity on
    /// the rest) and applies it.
    pub fn apply_on_subsystem(
        &self,
        state: &GaussianState,
        target_modes: &[usize],
    ) -> Result<GaussianState> {
        self.embed(state.modes(), target_modes)?.apply(state)
    }

    /// The channel `id ⊗ self ⊗ id` acting on `total_modes`, with `self` on
    /// the listed target modes.
    pub fn embed(&self, total_modes: usize, target_modes: &[usize]) -> Result<GaussianChannel> {
        if target_modes.len() != self.modes {
            return Err(Error::DimensionMismatch(format!(
                "channel on {} modes given {} target modes",
                self.modes,
                target_modes.len()
            )));
        }
        let mut seen = vec![false; total_modes];
        for &t in target_modes {
            if t >= total_modes {
                return Err(Error::DimensionMismatch(format!(
                    "target mode {t} out of range for {total_modes} modes"
                )));
            }
            if seen[t] {
                return Err(Error::InvalidParameter(format!(
                    "target mode {t} listed twice"
                )));
            }
            seen[t] = true;
        }
        let n = 2 * total_modes;
        // channel index a (q of mode a) -> target_modes[a]; k+a (p) -> m + target
        let map: Vec<usize> = target_modes
            .iter()
            .copied()
            .chain(target_modes.iter().map(|&t| total_modes + t))
            .collect();
        let mut x = DMatrix::identity(n, n);
        let mut y = DMatrix::zeros(n, n);
        let mut d = DVector::zeros(n);
        for (a, &ia) in map.iter().enumerate() {
            x[(ia, ia)] = 0.0;
            d[ia] = self.d[a];
        }
        for (a, &ia) in map.iter().enumerate() {
            for (b, &ib) in map.iter().enumerate() {
                x[(ia, ib)] = self.x[(a, b)];
                y[(ia, ib)] = self.y[(a, b)];
            }
        }
        Ok(GaussianChannel {
            modes: total_modes,
            x,
            y,
            d,
            family: None,
        })
    }
}

/// Serial composition `second ∘ first` at the `(X, Y, d)` level, so that
/// `apply(compose(g, f), ρ) = apply(g, apply(f, ρ))`.
pub fn compose(second: &GaussianChannel, first: &GaussianChannel) -> Result<GaussianChannel> {
    if second.modes != first.modes {
        return Err(Error::DimensionMismatch(format!(
            "composing {}-mode with {}-mode channel",
            second.modes, first.modes
        )));
    }
    let x = &first.x * &second.x;
    let y = second.x.transpose() * &first.y * &second.x + &second.y;
    let d = second.x.transpose() * &first.d + &second.d;
    Ok(GaussianChannel {
        modes: first.modes,
        x,
        y: (&y + y.transpose()) * 0.5,
        d,
        family: None,
    })
}

/// A unitary dilation: a symplectic on system ⊕ environment together with the
/// environment state, such that discarding the environment reproduces the
/// channel.
#[derive(Debug, Clone)]
pub struct Dilation {
    /// Symplectic on `2m` modes; system modes come first, environment second.
    pub symplectic: DMatrix<f64>,
    /// Environment state on `m` modes.
    pub env_state: GaussianState,
}

impl Dilation {
    /// Runs the dilation on an input state: tensor in the environment,
    /// conjugate by the symplectic, and trace the environment back out.
    pub fn apply(&self, state: &GaussianState) -> Result<GaussianState> {
        let m = self.env_state.modes();
        if state.modes() != m {
            return Err(Error::DimensionMismatch(format!(
                "dilation for {} modes applied to {}-mode state",
                m,
                state.modes()
            )));
        }
        let joint = state.tensor(&self.env_state);
        let rotated = joint.conjugate_symplectic(&self.symplectic)?;
        rotated.partial_trace(&(0..m).collect::<Vec<_>>())
    }
}

fn dilate_single_mode(
    family: &ChannelFamily,
    total_modes: usize,
    sys: usize,
    env: usize,
    s: &mut DMatrix<f64>,
    env_parts: &mut Vec<GaussianState>,
) -> Result<()> {
    match family {
        ChannelFamily::Thermal { eta, .. } | ChannelFamily::PureLoss { eta } => {
            let n_b = match family {
                ChannelFamily::Thermal { n_b, .. } => *n_b,
                _ => 0.0,
            };
            let bs = beamsplitter_symplectic(total_modes, sys, env, *eta);
            *s = &bs * &*s;
            env_parts.push(GaussianState::thermal(n_b)?);
            Ok(())
        }
        ChannelFamily::Amplifier { gain, n_b } => {
            let sq = two_mode_squeezer_symplectic(total_modes, sys, env, *gain);
            *s = &sq * &*s;
            env_parts.push(GaussianState::thermal(*n_b)?);
            Ok(())
        }
        ChannelFamily::PureAmplifier { gain } => {
            let sq = two_mode_squeezer_symplectic(total_modes, sys, env, *gain);
            *s = &sq * &*s;
            env_parts.push(GaussianState::vacuum(1));
            Ok(())
        }
        other => Err(Error::UnsupportedChannel(format!(
            "no unitary dilation for {}; only thermal/amplifier families and their products",
            other.describe()
        ))),
    }
}

/// Builds the unitary dilation of a thermal or amplifier channel (or a tensor
/// product of such). Additive-noise channels are realized by a classical
/// displacement register instead and are rejected here.
pub fn dilate(channel: &GaussianChannel) -> Result<Dilation> {
    let m = channel.modes;
    let family = channel.family.as_ref().ok_or_else(|| {
        Error::UnsupportedChannel("channel has no recognized family to dilate".into())
    })?;
    let total = 2 * m;
    let mut s = DMatrix::identity(2 * total, 2 * total);
    let mut env_parts = Vec::new();
    match family {
        ChannelFamily::Product(parts) => {
            if parts.len() != m {
                return Err(Error::UnsupportedChannel(format!(
                    "product family has {} parts for {} modes",
                    parts.len(),
                    m
                )));
            }
            for (i, part) in parts.iter().enumerate() {
                dilate_single_mode(part, total, i, m + i, &mut s, &mut env_parts)?;
            }
        }
        single => {
            if m != 1 {
                return Err(Error::UnsupportedChannel(
                    "multi-mode channel without product structure".into(),
                ));
            }
            dilate_single_mode(single, total, 0, 1, &mut s, &mut env_parts)?;
        }
    }
    let mut env_state = env_parts[0].clone();
    for part in &env_parts[1..] {
        env_state = env_state.tensor(part);
    }
    Ok(Dilation {
        symplectic: s,
        env_state,
    })
}

/// Moment-level displacement covariance residual: distance between
/// `channel(displace(ρ, z))` and `displace(channel(ρ), Xᵀz)`.
pub fn check_displacement_covariance(
    channel: &GaussianChannel,
    z: &DVector<f64>,
    state: &GaussianState,
) -> Result<f64> {
    let left = channel.apply(&state.displace(z)?)?;
    let right = channel
        .apply(state)?
        .displace(&(channel.x.transpose() * z))?;
    let dm = (left.mean() - right.mean()).amax();
    let dc = (left.cov() - right.cov()).amax();
    Ok(dm.max(dc))
}

/// JSON-facing channel description: either a named family or raw matrices in
/// row-major order.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ChannelSpec {
    Thermal {
        eta: f64,
        n_b: f64,
    },
    PureLoss {
        eta: f64,
    },
    Amplifier {
        gain: f64,
        n_b: f64,
    },
    PureAmplifier {
        gain: f64,
    },
    AdditiveNoise {
        xi: f64,
    },
    Identity {
        modes: usize,
    },
    Raw {
        x: Vec<f64>,
        y: Vec<f64>,
        d: Vec<f64>,
    },
}

impl ChannelSpec {
    pub fn build(&self) -> Result<GaussianChannel> {
        match self {
            ChannelSpec::Thermal { eta, n_b } => GaussianChannel::thermal(*eta, *n_b),
            ChannelSpec::PureLoss { eta } => GaussianChannel::pure_loss(*eta),
            ChannelSpec::Amplifier { gain, n_b } => GaussianChannel::amplifier(*gain, *n_b),
            ChannelSpec::PureAmplifier { gain } => GaussianChannel::pure_amplifier(*gain),
            ChannelSpec::AdditiveNoise { xi } => GaussianChannel::additive_noise(*xi),
            ChannelSpec::Identity { modes } => Ok(GaussianChannel::identity(*modes)),
            ChannelSpec::Raw { x, y, d } => {
                let n = d.len();
                if n == 0 || x.len() != n * n || y.len() != n * n {
                    return Err(Error::DimensionMismatch(format!(
                        "raw spec: |d|={}, |x|={}, |y|={}",
                        d.len(),
                        x.len(),
                        y.len()
                    )));
                }
                GaussianChannel::from_parts(
                    DMatrix::from_row_slice(n, n, x),
                    DMatrix::from_row_slice(n, n, y),
                    DVector::from_column_slice(d),
                )
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ChannelSpec::Raw { d, .. } => format!("raw({} quadratures)", d.len()),
            other => other
                .build()
                .ok()
                .and_then(|c| c.family().map(|f| f.describe()))
                .unwrap_or_else(|| "invalid".into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{make_tmsv_state, random_state, validate_covariance};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn identity_preserves_states() {
        let id = GaussianChannel::identity(2);
        let st = make_tmsv_state(1.3).unwrap();
        let out = id.apply(&st).unwrap();
        assert!((out.cov() - st.cov()).amax() < 1e-15);
    }

    #[test]
    fn additive_noise_on_vacuum() {
        let ch = GaussianChannel::additive_noise(0.4).unwrap();
        let out = ch.apply(&GaussianState::vacuum(1)).unwrap();
        let expect = DMatrix::<f64>::identity(2, 2) * 1.8;
        assert!((out.cov() - expect).amax() < 1e-15);
    }

    #[test]
    fn vacuum_is_fixed_point_of_pure_loss() {
        let ch = GaussianChannel::pure_loss(0.5).unwrap();
        let out = ch.apply(&GaussianState::vacuum(1)).unwrap();
        assert!((out.cov() - DMatrix::<f64>::identity(2, 2)).amax() < 1e-14);
    }

    #[test]
    fn constructor_parameter_ranges() {
        assert!(GaussianChannel::thermal(0.0, 1.0).is_err());
        assert!(GaussianChannel::thermal(1.0, 1.0).is_err());
        assert!(GaussianChannel::thermal(0.5, -0.1).is_err());
        assert!(GaussianChannel::amplifier(1.0, 0.0).is_err());
        assert!(GaussianChannel::additive_noise(0.0).is_err());
    }

    #[test]
    fn constructors_are_completely_positive() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..20 {
            let eta = rng.gen_range(0.01..0.99);
            let g = rng.gen_range(1.01..5.0);
            let nb = rng.gen_range(0.0..3.0);
            let xi = rng.gen_range(1e-3..2.0);
            for ch in [
                GaussianChannel::thermal(eta, nb).unwrap(),
                GaussianChannel::pure_loss(eta).unwrap(),
                GaussianChannel::amplifier(g, nb).unwrap(),
                GaussianChannel::pure_amplifier(g).unwrap(),
                GaussianChannel::additive_noise(xi).unwrap(),
            ] {
                assert!(
                    ch.is_cp(),
                    "{:?} has defect {}",
                    ch.family(),
                    ch.cp_defect()
                );
            }
        }
    }

    #[test]
    fn thermal_near_unit_transmissivity_approaches_identity() {
        let ch = GaussianChannel::thermal(1.0 - 1e-9, 2.0).unwrap();
        assert!((ch.x() - DMatrix::<f64>::identity(2, 2)).amax() < 1e-9);
        assert!(ch.y().amax() < 1e-8);
    }

    #[test]
    fn teleporting_one_arm_of_tmsv_adds_noise_to_that_block() {
        // Noising mode A of a TMSV adds 2σ̄ to the q_A and p_A diagonals only.
        let sigma = 0.5;
        let st = make_tmsv_state(1.0).unwrap();
        let t = GaussianChannel::additive_noise(sigma).unwrap();
        let out = t.apply_on_subsystem(&st, &[1]).unwrap();
        let mut expect = st.cov().clone();
        expect[(1, 1)] += 2.0 * sigma;
        expect[(3, 3)] += 2.0 * sigma;
        assert!((out.cov() - expect).amax() < 1e-14);
        // identity on the other arm leaves the state untouched
        let id = GaussianChannel::identity(1);
        let same = id.apply_on_subsystem(&st, &[0]).unwrap();
        assert!((same.cov() - st.cov()).amax() < 1e-15);
    }

    #[test]
    fn embedding_agrees_with_permutation_conjugation() {
        // Applying on mode 0 directly must match swap -> apply on mode 1 -> swap.
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let st = random_state(2, &mut rng);
        let ch = GaussianChannel::thermal(0.7, 0.4).unwrap();
        let direct = ch.apply_on_subsystem(&st, &[0]).unwrap();
        let mut perm = DMatrix::zeros(4, 4);
        perm[(0, 1)] = 1.0;
        perm[(1, 0)] = 1.0;
        perm[(2, 3)] = 1.0;
        perm[(3, 2)] = 1.0;
        let swapped = st.conjugate_symplectic(&perm).unwrap();
        let there = ch.apply_on_subsystem(&swapped, &[1]).unwrap();
        let back = there.conjugate_symplectic(&perm).unwrap();
        assert!((direct.cov() - back.cov()).amax() < 1e-12);
    }

    #[test]
    fn composing_thermal_with_teleport_noise_shifts_photon_number() {
        // thermal(η, N_B) ∘ T[σ̄] = thermal(η, N_B + ησ̄/(1−η)) exactly
        let (eta, nb, sigma) = (0.5, 1.0, 0.2);
        let lhs = compose(
            &GaussianChannel::thermal(eta, nb).unwrap(),
            &GaussianChannel::additive_noise(sigma).unwrap(),
        )
        .unwrap();
        let rhs = GaussianChannel::thermal(eta, nb + eta * sigma / (1.0 - eta)).unwrap();
        assert!((lhs.x() - rhs.x()).amax() < 1e-15);
        assert!((lhs.y() - rhs.y()).amax() < 1e-14);
    }

    #[test]
    fn composing_amplifier_with_teleport_noise_shifts_photon_number() {
        let (g, nb, sigma) = (2.0, 0.0, 0.1);
        let lhs = compose(
            &GaussianChannel::amplifier(g, nb).unwrap(),
            &GaussianChannel::additive_noise(sigma).unwrap(),
        )
        .unwrap();
        let rhs = GaussianChannel::amplifier(g, nb + g * sigma / (g - 1.0)).unwrap();
        assert!((lhs.x() - rhs.x()).amax() < 1e-15);
        assert!((lhs.y() - rhs.y()).amax() < 1e-14);
    }

    #[test]
    fn additive_noise_composes_additively() {
        let lhs = compose(
            &GaussianChannel::additive_noise(0.7).unwrap(),
            &GaussianChannel::additive_noise(0.3).unwrap(),
        )
        .unwrap();
        let rhs = GaussianChannel::additive_noise(1.0).unwrap();
        assert!((lhs.y() - rhs.y()).amax() < 1e-14);
    }

    #[test]
    fn composition_is_associative_and_consistent_with_sequential_apply() {
        let mut rng = ChaCha12Rng::seed_from_u64(77);
        let a = GaussianChannel::thermal(0.6, 0.5).unwrap();
        let b = GaussianChannel::amplifier(1.8, 0.2).unwrap();
        let c = GaussianChannel::additive_noise(0.15).unwrap();
        let left = compose(&compose(&c, &b).unwrap(), &a).unwrap();
        let right = compose(&c, &compose(&b, &a).unwrap()).unwrap();
        assert!((left.x() - right.x()).amax() < 1e-12);
        assert!((left.y() - right.y()).amax() < 1e-12);
        for _ in 0..5 {
            let st = random_state(1, &mut rng);
            let seq = c.apply(&b.apply(&a.apply(&st).unwrap()).unwrap()).unwrap();
            let oneshot = left.apply(&st).unwrap();
            assert!((seq.cov() - oneshot.cov()).amax() < 1e-12);
            assert!((seq.mean() - oneshot.mean()).amax() < 1e-12);
        }
    }

    #[test]
    fn apply_outputs_remain_physical() {
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        let form = SymplecticForm::new(1);
        for _ in 0..10 {
            let st = random_state(1, &mut rng);
            let ch = GaussianChannel::thermal(rng.gen_range(0.05..0.95), rng.gen_range(0.0..2.0))
                .unwrap();
            let out = ch.apply(&st).unwrap();
            assert!(validate_covariance(out.cov(), &form).unwrap().valid);
        }
    }

    #[test]
    fn dilation_reproduces_thermal_and_amplifier_channels() {
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        for _ in 0..6 {
            let eta = rng.gen_range(0.1..0.9);
            let nb = rng.gen_range(0.0..2.0);
            let ch = GaussianChannel::thermal(eta, nb).unwrap();
            let dil = dilate(&ch).unwrap();
            let form = SymplecticForm::new(2);
            assert!(form.is_symplectic(&dil.symplectic, 1e-9));
            let st = random_state(1, &mut rng);
            let via_dilation = dil.apply(&st).unwrap();
            let direct = ch.apply(&st).unwrap();
            assert!((via_dilation.cov() - direct.cov()).amax() < 1e-9);

            let g = rng.gen_range(1.1..4.0);
            let ch = GaussianChannel::amplifier(g, nb).unwrap();
            let dil = dilate(&ch).unwrap();
            let st = random_state(1, &mut rng);
            assert!((dil.apply(&st).unwrap().cov() - ch.apply(&st).unwrap().cov()).amax() < 1e-9);
        }
    }

    #[test]
    fn dilation_of_pure_loss_is_vacuum_beamsplitter() {
        let ch = GaussianChannel::pure_loss(0.36).unwrap();
        let dil = dilate(&ch).unwrap();
        assert!((dil.env_state.cov() - DMatrix::<f64>::identity(2, 2)).amax() < 1e-15);
        let c = 0.6;
        let s = 0.8;
        assert!((dil.symplectic[(0, 0)] - c).abs() < 1e-15);
        assert!((dil.symplectic[(0, 1)] - s).abs() < 1e-15);
        assert!((dil.symplectic[(1, 0)] + s).abs() < 1e-15);
    }

    #[test]
    fn dilation_of_tensor_product_is_blockwise() {
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        let ch = GaussianChannel::thermal(0.4, 0.3)
            .unwrap()
            .tensor(&GaussianChannel::thermal(0.8, 1.1).unwrap());
        let dil = dilate(&ch).unwrap();
        let st = random_state(2, &mut rng);
        let via = dil.apply(&st).unwrap();
        let direct = ch.apply(&st).unwrap();
        assert!((via.cov() - direct.cov()).amax() < 1e-9);
    }

    #[test]
    fn additive_noise_has_no_unitary_dilation_here() {
        let ch = GaussianChannel::additive_noise(0.3).unwrap();
        assert!(matches!(dilate(&ch), Err(Error::UnsupportedChannel(_))));
    }

    #[test]
    fn displacement_covariance_residuals_vanish() {
        let mut rng = ChaCha12Rng::seed_from_u64(99);
        let st = random_state(1, &mut rng);
        let ch = GaussianChannel::thermal(0.3, 0.8).unwrap();
        let zero = DVector::zeros(2);
        assert_eq!(check_displacement_covariance(&ch, &zero, &st).unwrap(), 0.0);
        for _ in 0..10 {
            let z = DVector::from_fn(2, |_, _| rng.gen_range(-3.0..3.0));
            let r = check_displacement_covariance(&ch, &z, &st).unwrap();
            assert!(r < 1e-12, "residual {r}");
        }
        // a raw non-phase-insensitive channel
        let x = DMatrix::from_row_slice(2, 2, &[0.4, 0.1, -0.1, 0.5]);
        let y = DMatrix::identity(2, 2) * 2.0;
        let raw = GaussianChannel::from_parts(x, y, DVector::zeros(2)).unwrap();
        for _ in 0..10 {
            let z = DVector::from_fn(2, |_, _| rng.gen_range(-3.0..3.0));
            let st = random_state(1, &mut rng);
            assert!(check_displacement_covariance(&raw, &z, &st).unwrap() < 1e-12);
        }
    }

    #[test]
    fn channel_spec_round_trips_through_json() {
        let spec = ChannelSpec::Thermal { eta: 0.5, n_b: 1.0 };
        let text = serde_json::to_string(&spec).unwrap();
        let back: ChannelSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(spec, back);
        let ch = back.build().unwrap();
        assert!((ch.x()[(0, 0)] - 0.5f64.sqrt()).abs() < 1e-15);

        let raw = ChannelSpec::Raw {
            x: vec![1.0, 0.0, 0.0, 1.0],
            y: vec![0.5, 0.0, 0.0, 0.5],
            d: vec![0.0, 0.0],
        };
        let ch = raw.build().unwrap();
        assert_eq!(ch.modes(), 1);

        let unknown = r#"{"kind":"thermal","eta":0.5,"n_b":1.0,"bogus":1}"#;
        assert!(serde_json::from_str::<ChannelSpec>(unknown).is_err());
    }

    #[test]
    fn raw_spec_rejects_non_cp_maps() {
        // X = 2I with Y = 0 violates the uncertainty-based CP condition.
        let bad = ChannelSpec::Raw {
            x: vec![2.0, 0.0, 0.0, 2.0],
            y: vec![0.0; 4],
            d: vec![0.0, 0.0],
        };
        assert!(bad.build().is_err());
    }
}
