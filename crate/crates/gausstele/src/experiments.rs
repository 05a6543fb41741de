//! Scripted convergence experiments, emitted as CSV tables.
//!
//! The sweeps contrast the two convergence modes of teleportation
//! simulation: per-state (strong) convergence, where the infidelity at any
//! fixed input falls to zero with `σ̄`, and worst-case (uniform) divergence
//! for the identity channel, where brighter squeezed probes push the
//! infidelity toward one at any fixed `σ̄`. Channel simulations are also
//! swept against their closed-form uniform bounds and the brute-force
//! oracle, and telescoping bounds are exercised on parallel and adaptive
//! serial compositions.

use std::io::Write;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::channel::{ChannelFamily, ChannelSpec};
use crate::fock::{
    apply_teleport_channel_fock, entanglement_infidelity_teleport, fidelity_fock,
    make_basel_reduced, make_basel_state, make_tmsv_fock, FockState, NumberKernel,
    DEFAULT_BASEL_CUTOFF, DEFAULT_ORACLE_CUTOFF, DEFAULT_TRUST_FLOOR,
};
use crate::metric::{fidelity_gaussian_zero_mean, overlap_two_mode_zero_mean};
use crate::symplectic::{make_tmsv_state, random_symplectic};
use crate::telesim::{
    simulate, telescoping_bound_parallel, telescoping_bound_serial, uniform_bound_additive,
    uniform_bound_amplifier, uniform_bound_thermal,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    StrongFixedState,
    UniformDivergence,
    TensorPower,
    AdaptiveSerial,
    BoundVsOracle,
}

impl ExperimentKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentKind::StrongFixedState => "strong_fixed_state",
            ExperimentKind::UniformDivergence => "uniform_divergence",
            ExperimentKind::TensorPower => "tensor_power",
            ExperimentKind::AdaptiveSerial => "adaptive_serial",
            ExperimentKind::BoundVsOracle => "bound_vs_oracle",
        }
    }
}

/// Probe/input states used by the sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    Vacuum,
    Tmsv { n_s: f64 },
    Basel,
}

impl StateSpec {
    pub fn describe(&self) -> String {
        match self {
            StateSpec::Vacuum => "vacuum".into(),
            StateSpec::Tmsv { n_s } => format!("tmsv(n_s={n_s})"),
            StateSpec::Basel => "basel".into(),
        }
    }
}

/// A sweep request, read from JSON. Unknown fields are rejected.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    /// Scenario schema version; only 1 is understood.
    #[serde(default = "default_version")]
    pub version: u32,
    pub experiment: ExperimentKind,
    #[serde(default)]
    pub state: Option<StateSpec>,
    #[serde(default)]
    pub channel: Option<ChannelSpec>,
    /// Strictly decreasing positive values of `σ̄`.
    pub sigma_grid: Vec<f64>,
    /// Strictly increasing probe photon numbers (uniform divergence).
    #[serde(default)]
    pub n_s_grid: Vec<f64>,
    #[serde(default)]
    pub cutoff: Option<usize>,
    #[serde(default)]
    pub rounds: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub probes: Vec<StateSpec>,
    /// Minimum trusted truncation weight for oracle rows.
    #[serde(default)]
    pub trust_floor: Option<f64>,
    /// Default CSV destination; the CLI `--out` flag overrides it.
    #[serde(default)]
    pub output_path: Option<String>,
}

fn default_version() -> u32 {
    1
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.version != 1 {
            return Err(Error::Scenario(format!(
                "unsupported scenario version {}",
                self.version
            )));
        }
        if self.sigma_grid.is_empty() {
            return Err(Error::Scenario("sigma_grid must be nonempty".into()));
        }
        if self.sigma_grid.iter().any(|s| !(*s > 0.0)) {
            return Err(Error::Scenario("sigma_grid entries must be > 0".into()));
        }
        if !self.sigma_grid.windows(2).all(|w| w[0] > w[1]) {
            return Err(Error::Scenario(
                "sigma_grid must be strictly decreasing".into(),
            ));
        }
        if !self.n_s_grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Scenario(
                "n_s_grid must be strictly increasing".into(),
            ));
        }
        match self.experiment {
            ExperimentKind::StrongFixedState | ExperimentKind::TensorPower => {
                if self.state.is_none() {
                    return Err(Error::Scenario("experiment needs a `state`".into()));
                }
            }
            ExperimentKind::UniformDivergence => {
                if self.n_s_grid.is_empty() {
                    return Err(Error::Scenario("experiment needs `n_s_grid`".into()));
                }
            }
            ExperimentKind::AdaptiveSerial | ExperimentKind::BoundVsOracle => {
                if self.channel.is_none() {
                    return Err(Error::Scenario("experiment needs a `channel`".into()));
                }
            }
        }
        if self.experiment == ExperimentKind::BoundVsOracle && self.probes.is_empty() {
            return Err(Error::Scenario("experiment needs `probes`".into()));
        }
        Ok(())
    }

    fn floor(&self) -> f64 {
        self.trust_floor.unwrap_or(DEFAULT_TRUST_FLOOR)
    }
}

/// One emitted row.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    /// Row label (probe or state description), when the sweep mixes states.
    pub label: Option<String>,
    /// Named numeric parameters, in column order.
    pub parameters: Vec<(String, f64)>,
    /// Infidelity or sine-distance value of this row.
    pub value: f64,
    /// Independent oracle value, where applicable.
    pub oracle_value: Option<f64>,
    /// Closed-form bound, where applicable.
    pub bound_value: Option<f64>,
    pub truncation_weight: Option<f64>,
}

/// A finished sweep: column names plus rows, ready for CSV.
#[derive(Debug, Clone)]
pub struct SweepTable {
    pub experiment: ExperimentKind,
    pub columns: Vec<String>,
    pub rows: Vec<SweepRow>,
}

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

impl SweepTable {
    /// CSV with a header row and a trailing metadata comment carrying the
    /// toolkit version and a hash of the generating spec.
    pub fn write_csv<W: Write>(&self, spec: &SweepSpec, out: &mut W) -> Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let mut fields = Vec::with_capacity(self.columns.len());
            if let Some(label) = &row.label {
                fields.push(label.clone());
            }
            for (_, v) in &row.parameters {
                fields.push(fmt(*v));
            }
            fields.push(fmt(row.value));
            if let Some(o) = row.oracle_value {
                fields.push(fmt(o));
            } else if self.columns.iter().any(|c| c.starts_with("oracle")) {
                fields.push(String::new());
            }
            if let Some(b) = row.bound_value {
                fields.push(fmt(b));
            } else if self.columns.iter().any(|c| c.starts_with("bound")) {
                fields.push(String::new());
            }
            if let Some(w) = row.truncation_weight {
                fields.push(fmt(w));
            } else if self.columns.iter().any(|c| c.starts_with("trunc")) {
                fields.push(String::new());
            }
            writeln!(out, "{}", fields.join(","))?;
        }
        let digest = Sha256::digest(serde_json::to_string(spec)?.as_bytes());
        writeln!(
            out,
            "# gausstele={} experiment={} config_sha256={:x}",
            env!("CARGO_PKG_VERSION"),
            self.experiment.as_str(),
            digest
        )?;
        Ok(())
    }
}

/// Dispatches a validated spec to its runner.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    match spec.experiment {
        ExperimentKind::StrongFixedState => run_strong_convergence(spec),
        ExperimentKind::UniformDivergence => run_uniform_divergence(spec),
        ExperimentKind::TensorPower => run_tensor_power(spec),
        ExperimentKind::AdaptiveSerial => run_adaptive_serial(spec),
        ExperimentKind::BoundVsOracle => run_bound_vs_oracle(spec),
    }
}

/// Fixed input state, shrinking `σ̄`: the infidelity falls to zero for every
/// state, including the infinite-energy Basel state.
pub fn run_strong_convergence(spec: &SweepSpec) -> Result<SweepTable> {
    let state = spec
        .state
        .ok_or_else(|| Error::Scenario("state required".into()))?;
    let mut rows = Vec::new();
    match state {
        StateSpec::Basel => {
            let cutoff = spec.cutoff.unwrap_or(DEFAULT_BASEL_CUTOFF);
            let red = make_basel_reduced(cutoff)?;
            if red.truncation_weight() < spec.floor() {
                return Err(Error::TruncationFloor(format!(
                    "basel cutoff {cutoff} captures weight {:.8} < floor {:.8}",
                    red.truncation_weight(),
                    spec.floor()
                )));
            }
            for &sigma in &spec.sigma_grid {
                let eps = entanglement_infidelity_teleport(&red, sigma)?;
                rows.push(SweepRow {
                    label: None,
                    parameters: vec![("sigma_bar".into(), sigma)],
                    value: eps,
                    oracle_value: None,
                    bound_value: None,
                    truncation_weight: Some(red.truncation_weight()),
                });
            }
        }
        StateSpec::Vacuum | StateSpec::Tmsv { .. } => {
            let n_s = match state {
                StateSpec::Tmsv { n_s } => n_s,
                _ => 0.0,
            };
            let cutoff = spec.cutoff.unwrap_or(600);
            let red = crate::fock::make_thermal_fock(n_s, cutoff)?;
            for &sigma in &spec.sigma_grid {
                let eps = entanglement_infidelity_teleport(&red, sigma)?;
                let closed = 1.0 - 1.0 / (sigma + 2.0 * sigma * n_s + 1.0);
                rows.push(SweepRow {
                    label: None,
                    parameters: vec![("sigma_bar".into(), sigma)],
                    value: eps,
                    oracle_value: Some(closed),
                    bound_value: None,
                    truncation_weight: Some(red.truncation_weight()),
                });
            }
        }
    }
    Ok(SweepTable {
        experiment: ExperimentKind::StrongFixedState,
        columns: match state {
            StateSpec::Basel => vec![
                "sigma_bar".into(),
                "infidelity".into(),
                "truncation_weight".into(),
            ],
            _ => vec![
                "sigma_bar".into(),
                "infidelity".into(),
                "oracle_closed_form".into(),
                "truncation_weight".into(),
            ],
        },
        rows,
    })
}

/// Fixed `σ̄`, growing probe energy: the worst case runs away to infidelity
/// one, exhibiting the failure of uniform convergence for the identity.
pub fn run_uniform_divergence(spec: &SweepSpec) -> Result<SweepTable> {
    let sigma = spec.sigma_grid[0];
    let cutoff = spec.cutoff.unwrap_or(DEFAULT_ORACLE_CUTOFF);
    let kernel = NumberKernel::teleport(sigma, cutoff)?;
    let mut rows = Vec::new();
    for &n_s in &spec.n_s_grid {
        let closed = 1.0 - 1.0 / (sigma + 2.0 * sigma * n_s + 1.0);
        // the oracle is only trustworthy while the TMSV tail fits the cutoff
        let (oracle, weight) = if n_s <= 2.0 {
            let probe = make_tmsv_fock(n_s, cutoff)?;
            if probe.truncation_weight() < spec.floor() {
                return Err(Error::TruncationFloor(format!(
                    "row n_s={n_s}: weight {:.9} < floor {:.9}",
                    probe.truncation_weight(),
                    spec.floor()
                )));
            }
            let (out, _) = kernel.apply(&probe, 1)?;
            (
                Some(1.0 - out.overlap_with_pure(&probe)?),
                Some(probe.truncation_weight()),
            )
        } else {
            (None, None)
        };
        rows.push(SweepRow {
            label: None,
            parameters: vec![("n_s".into(), n_s), ("sigma_bar".into(), sigma)],
            value: closed,
            oracle_value: oracle,
            bound_value: None,
            truncation_weight: weight,
        });
    }
    Ok(SweepTable {
        experiment: ExperimentKind::UniformDivergence,
        columns: vec![
            "n_s".into(),
            "sigma_bar".into(),
            "infidelity".into(),
            "oracle_infidelity".into(),
            "truncation_weight".into(),
        ],
        rows,
    })
}

/// Two parallel uses of the teleportation channel against a two-mode probe:
/// exact two-use infidelity against the telescoping bound.
pub fn run_tensor_power(spec: &SweepSpec) -> Result<SweepTable> {
    let state = spec
        .state
        .ok_or_else(|| Error::Scenario("state required".into()))?;
    let cutoff = spec.cutoff.unwrap_or(40);
    let probe_fock: FockState = match state {
        StateSpec::Vacuum => FockState::vacuum(2, cutoff),
        StateSpec::Tmsv { n_s } => make_tmsv_fock(n_s, cutoff)?,
        StateSpec::Basel => make_basel_state(cutoff)?,
    };
    let mut rows = Vec::new();
    for &sigma in &spec.sigma_grid {
        // both arms through the channel
        let (mid, _) = apply_teleport_channel_fock(&probe_fock, sigma, 0)?;
        let (out, _) = apply_teleport_channel_fock(&mid, sigma, 1)?;
        let eps_oracle = 1.0 - fidelity_fock(&probe_fock, &out)?;
        // closed form for Gaussian probes; single-use infidelity for the bound
        let (closed, eps_single): (Option<f64>, f64) = match state {
            StateSpec::Vacuum => {
                let f1 = 1.0 / (1.0 + sigma);
                (Some(1.0 - f1 * f1), sigma / (1.0 + sigma))
            }
            StateSpec::Tmsv { n_s } => {
                let v = make_tmsv_state(n_s)?;
                let noisy = v.cov() + nalgebra::DMatrix::identity(4, 4) * (2.0 * sigma);
                let f2 = overlap_two_mode_zero_mean(v.cov(), &noisy)?;
                (
                    Some(1.0 - f2),
                    1.0 - 1.0 / (sigma + 2.0 * sigma * n_s + 1.0),
                )
            }
            StateSpec::Basel => {
                let red = make_basel_reduced(cutoff)?;
                (None, entanglement_infidelity_teleport(&red, sigma)?)
            }
        };
        let bound = telescoping_bound_parallel(&[eps_single.sqrt(), eps_single.sqrt()]);
        rows.push(SweepRow {
            label: None,
            parameters: vec![("sigma_bar".into(), sigma)],
            value: closed.unwrap_or(eps_oracle),
            oracle_value: Some(eps_oracle),
            bound_value: Some(bound),
            truncation_weight: Some(probe_fock.truncation_weight()),
        });
    }
    Ok(SweepTable {
        experiment: ExperimentKind::TensorPower,
        columns: vec![
            "sigma_bar".into(),
            "epsilon_two_use".into(),
            "oracle_epsilon".into(),
            "bound_p_sum".into(),
            "truncation_weight".into(),
        ],
        rows,
    })
}

fn per_step_bound(family: &ChannelFamily, sigma: f64) -> Result<f64> {
    Ok(match family {
        ChannelFamily::Thermal { eta, n_b } => {
            uniform_bound_thermal(*eta, *n_b, sigma)?.bound_value
        }
        ChannelFamily::PureLoss { eta } => uniform_bound_thermal(*eta, 0.0, sigma)?.bound_value,
        ChannelFamily::Amplifier { gain, n_b } => {
            uniform_bound_amplifier(*gain, *n_b, sigma)?.bound_value
        }
        ChannelFamily::PureAmplifier { gain } => {
            uniform_bound_amplifier(*gain, 0.0, sigma)?.bound_value
        }
        ChannelFamily::AdditiveNoise { xi } => uniform_bound_additive(*xi, sigma)?.bound_value,
        other => {
            return Err(Error::UnsupportedChannel(format!(
                "no closed-form per-step bound for {}",
                other.describe()
            )))
        }
    })
}

/// An adaptive serial protocol at the covariance level: `n` channel uses
/// interleaved with seeded random symplectic adaptors, comparing the ideal
/// chain against the `σ̄`-simulated chain.
pub fn run_adaptive_serial(spec: &SweepSpec) -> Result<SweepTable> {
    use rand::SeedableRng;
    let chspec = spec
        .channel
        .clone()
        .ok_or_else(|| Error::Scenario("channel required".into()))?;
    let channel = chspec.build()?;
    if channel.modes() != 1 {
        return Err(Error::UnsupportedChannel(
            "adaptive sweep drives single-mode channels".into(),
        ));
    }
    let family = channel.family().cloned().ok_or_else(|| {
        Error::UnsupportedChannel("raw channels have no closed-form bound".into())
    })?;
    let rounds = spec.rounds.unwrap_or(3).clamp(1, 3);
    let n_s = match spec.state {
        Some(StateSpec::Tmsv { n_s }) => n_s,
        _ => 1.0,
    };
    let probe = make_tmsv_state(n_s)?;
    let mut rows = Vec::new();
    for &sigma in &spec.sigma_grid {
        let sim = simulate(&channel, sigma)?;
        let e_step = per_step_bound(&family, sigma)?;
        // identical adaptor sequence for every σ̄ row
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(spec.seed.unwrap_or(1));
        let mut ideal = probe.clone();
        let mut noisy = probe.clone();
        for _ in 0..rounds {
            ideal = channel.apply_on_subsystem(&ideal, &[1])?;
            noisy = sim.simulated.apply_on_subsystem(&noisy, &[1])?;
            let adaptor = random_symplectic(2, &mut rng);
            ideal = ideal.conjugate_symplectic(&adaptor)?;
            noisy = noisy.conjugate_symplectic(&adaptor)?;
        }
        let p = fidelity_gaussian_zero_mean(&ideal, &noisy)?.p_distance;
        let bound = telescoping_bound_serial(&vec![e_step; rounds]);
        rows.push(SweepRow {
            label: None,
            parameters: vec![
                ("sigma_bar".into(), sigma),
                ("rounds".into(), rounds as f64),
            ],
            value: p,
            oracle_value: None,
            bound_value: Some(bound),
            truncation_weight: None,
        });
    }
    Ok(SweepTable {
        experiment: ExperimentKind::AdaptiveSerial,
        columns: vec![
            "sigma_bar".into(),
            "rounds".into(),
            "p_composite".into(),
            "bound_p_sum".into(),
        ],
        rows,
    })
}

/// Oracle sine distance for a probe through `channel` vs its simulation.
fn oracle_p_for_probe(
    probe: &StateSpec,
    channel: &ChannelSpec,
    sigma: f64,
    cutoff: usize,
    floor: f64,
) -> Result<(f64, f64)> {
    let state = match probe {
        StateSpec::Vacuum => FockState::vacuum(2, cutoff),
        StateSpec::Tmsv { n_s } => make_tmsv_fock(*n_s, cutoff)?,
        StateSpec::Basel => make_basel_state(cutoff)?,
    };
    if matches!(probe, StateSpec::Vacuum | StateSpec::Tmsv { .. })
        && state.truncation_weight() < floor
    {
        return Err(Error::TruncationFloor(format!(
            "probe {} captures weight {:.9} < floor {:.9} at cutoff {cutoff}",
            probe.describe(),
            state.truncation_weight(),
            floor
        )));
    }
    let built = channel.build()?;
    let family = built
        .family()
        .ok_or_else(|| Error::UnsupportedChannel("bound sweep needs a named family".into()))?;
    let (k_ideal, k_sim) = match family {
        ChannelFamily::Thermal { eta, n_b } => (
            NumberKernel::thermal(*eta, *n_b, cutoff)?,
            NumberKernel::thermal(*eta, n_b + eta * sigma / (1.0 - eta), cutoff)?,
        ),
        ChannelFamily::PureLoss { eta } => (
            NumberKernel::pure_loss(*eta, cutoff)?,
            NumberKernel::thermal(*eta, eta * sigma / (1.0 - eta), cutoff)?,
        ),
        ChannelFamily::Amplifier { gain, n_b } => (
            NumberKernel::amplifier(*gain, *n_b, cutoff)?,
            NumberKernel::amplifier(*gain, n_b + gain * sigma / (gain - 1.0), cutoff)?,
        ),
        ChannelFamily::PureAmplifier { gain } => (
            NumberKernel::pure_amplifier(*gain, cutoff)?,
            NumberKernel::amplifier(*gain, gain * sigma / (gain - 1.0), cutoff)?,
        ),
        other => {
            return Err(Error::UnsupportedChannel(format!(
                "bound sweep covers thermal/amplifier families, got {}",
                other.describe()
            )))
        }
    };
    let (o1, _) = k_ideal.apply(&state, 1)?;
    let (o2, _) = k_sim.apply(&state, 1)?;
    let f = fidelity_fock(&o1, &o2)?;
    Ok(((1.0 - f).sqrt(), state.truncation_weight()))
}

/// Oracle sine distances for a family of probes against the closed-form
/// uniform bound, row per (probe, σ̄).
pub fn run_bound_vs_oracle(spec: &SweepSpec) -> Result<SweepTable> {
    let chspec = spec
        .channel
        .clone()
        .ok_or_else(|| Error::Scenario("channel required".into()))?;
    let family = chspec
        .build()?
        .family()
        .cloned()
        .ok_or_else(|| Error::UnsupportedChannel("named channel required".into()))?;
    let cutoff = spec.cutoff.unwrap_or(DEFAULT_ORACLE_CUTOFF);
    let mut rows = Vec::new();
    for &sigma in &spec.sigma_grid {
        let bound = per_step_bound(&family, sigma)?;
        for probe in &spec.probes {
            let (p, weight) = oracle_p_for_probe(probe, &chspec, sigma, cutoff, spec.floor())?;
            rows.push(SweepRow {
                label: Some(probe.describe()),
                parameters: vec![("sigma_bar".into(), sigma)],
                value: p,
                oracle_value: None,
                bound_value: Some(bound),
                truncation_weight: Some(weight),
            });
        }
    }
    Ok(SweepTable {
        experiment: ExperimentKind::BoundVsOracle,
        columns: vec![
            "probe".into(),
            "sigma_bar".into(),
            "p_oracle".into(),
            "bound".into(),
            "truncation_weight".into(),
        ],
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basel_spec() -> SweepSpec {
        SweepSpec {
            version: 1,
            experiment: ExperimentKind::StrongFixedState,
            state: Some(StateSpec::Basel),
            channel: None,
            sigma_grid: vec![1.0, 0.1, 0.01, 0.001],
            n_s_grid: vec![],
            cutoff: Some(2000),
            rounds: None,
            seed: None,
            probes: vec![],
            trust_floor: Some(0.999),
            output_path: None,
        }
    }

    #[test]
    fn strong_convergence_rows_decrease_monotonically() {
        let spec = basel_spec();
        let table = run_sweep(&spec).unwrap();
        assert_eq!(table.rows.len(), 4);
        for w in table.rows.windows(2) {
            assert!(w[0].value > w[1].value);
        }
        assert!(table.rows.last().unwrap().value < 0.02);
    }

    #[test]
    fn strong_convergence_vacuum_matches_analytic() {
        let mut spec = basel_spec();
        spec.state = Some(StateSpec::Vacuum);
        spec.cutoff = Some(50);
        spec.trust_floor = None;
        spec.sigma_grid = vec![1.0, 0.1, 0.01];
        let table = run_sweep(&spec).unwrap();
        let expect = [0.5, 1.0 / 11.0, 1.0 / 101.0];
        for (row, e) in table.rows.iter().zip(expect) {
            assert!((row.value - e).abs() < 1e-8, "{} vs {e}", row.value);
            assert!((row.oracle_value.unwrap() - e).abs() < 1e-12);
        }
    }

    #[test]
    fn uniform_divergence_rows_increase_and_match_oracle() {
        let spec = SweepSpec {
            version: 1,
            experiment: ExperimentKind::UniformDivergence,
            state: None,
            channel: None,
            sigma_grid: vec![0.1],
            n_s_grid: vec![0.0, 1.0, 2.0, 10.0, 1000.0],
            cutoff: Some(60),
            rounds: None,
            seed: None,
            probes: vec![],
            trust_floor: None,
            output_path: None,
        };
        let table = run_sweep(&spec).unwrap();
        for w in table.rows.windows(2) {
            assert!(w[0].value < w[1].value);
        }
        // N_S = 0 reduces to the vacuum value; N_S = 1000 is near one
        assert!((table.rows[0].value - 0.1 / 1.1).abs() < 1e-12);
        let last = table.rows.last().unwrap();
        assert!((last.value - (1.0 - 1.0 / 201.1)).abs() < 1e-12);
        assert!(last.oracle_value.is_none());
        for row in &table.rows {
            if let Some(o) = row.oracle_value {
                assert!((o - row.value).abs() < 1e-4, "{o} vs {}", row.value);
            }
        }
    }

    #[test]
    fn tensor_power_vacuum_matches_product_formula_and_bound() {
        let spec = SweepSpec {
            version: 1,
            experiment: ExperimentKind::TensorPower,
            state: Some(StateSpec::Vacuum),
            channel: None,
            sigma_grid: vec![0.5, 0.3, 0.1],
            n_s_grid: vec![],
            cutoff: Some(30),
            rounds: None,
            seed: None,
            probes: vec![],
            trust_floor: None,
            output_path: None,
        };
        let table = run_sweep(&spec).unwrap();
        let mut last = f64::INFINITY;
        for row in &table.rows {
            let sigma = row.parameters[0].1;
            let f1 = 1.0 / (1.0 + sigma);
            assert!((row.value - (1.0 - f1 * f1)).abs() < 1e-12);
            let oracle = row.oracle_value.unwrap();
            assert!(
                (oracle - row.value).abs() < 1e-6,
                "{oracle} vs {}",
                row.value
            );
            // exact composite P never exceeds the telescoping bound
            assert!(oracle.sqrt() <= row.bound_value.unwrap() + 1e-9);
            assert!(row.value < last);
            last = row.value;
        }
    }

    #[test]
    fn tensor_power_tmsv_respects_bound() {
        let spec = SweepSpec {
            version: 1,
            experiment: ExperimentKind::TensorPower,
            state: Some(StateSpec::Tmsv { n_s: 1.0 }),
            channel: None,
            sigma_grid: vec![0.3],
            n_s_grid: vec![],
            cutoff: Some(40),
            rounds: None,
            seed: None,
            probes: vec![],
            trust_floor: None,
            output_path: None,
        };
        let table = run_sweep(&spec).unwrap();
        let row = &table.rows[0];
        assert!((row.value - row.oracle_value.unwrap()).abs() < 1e-5);
        assert!(row.value.sqrt() <= row.bound_value.unwrap() + 1e-9);
    }

    #[test]
    fn adaptive_serial_respects_telescoping_bound() {
        for seed in [1u64, 2, 3] {
            let spec = SweepSpec {
                version: 1,
                experiment: ExperimentKind::AdaptiveSerial,
                state: Some(StateSpec::Tmsv { n_s: 1.0 }),
                channel: Some(ChannelSpec::Thermal { eta: 0.6, n_b: 0.4 }),
                sigma_grid: vec![0.5, 0.1, 0.02],
                n_s_grid: vec![],
                cutoff: None,
                rounds: Some(3),
                seed: Some(seed),
                probes: vec![],
                trust_floor: None,
                output_path: None,
            };
            let table = run_sweep(&spec).unwrap();
            let mut last = f64::INFINITY;
            for row in &table.rows {
                assert!(
                    row.value <= row.bound_value.unwrap() + 1e-10,
                    "seed {seed}: {} vs {:?}",
                    row.value,
                    row.bound_value
                );
                assert!(row.value < last);
                last = row.value;
            }
        }
    }

    #[test]
    fn fock_level_adaptive_round_respects_telescoping_bound() {
        // two channel uses with an adaptor that discards the channel output
        // and feeds a fresh vacuum mode in between
        use crate::fock::{fidelity_fock, make_tmsv_fock, FockState, NumberKernel};
        let (eta, n_b, sigma, cutoff) = (0.5, 0.5, 0.3, 30);
        let shifted = n_b + eta * sigma / (1.0 - eta);
        let ideal = NumberKernel::thermal(eta, n_b, cutoff).unwrap();
        let noisy = NumberKernel::thermal(eta, shifted, cutoff).unwrap();
        let probe = make_tmsv_fock(1.0, cutoff).unwrap();
        let chain = |k: &NumberKernel| -> FockState {
            let (after_first, _) = k.apply(&probe, 1).unwrap();
            // adaptor: keep the reference arm, replace the channel output
            let kept = after_first.partial_trace(0).unwrap();
            let refreshed = kept.tensor(&FockState::vacuum(1, cutoff)).unwrap();
            k.apply(&refreshed, 1).unwrap().0
        };
        let p = (1.0 - fidelity_fock(&chain(&ideal), &chain(&noisy)).unwrap()).sqrt();
        let e = uniform_bound_thermal(eta, n_b, sigma).unwrap().bound_value;
        let bound = telescoping_bound_serial(&[e, e]);
        assert!(p <= bound + 1e-4, "{p} vs {bound}");
    }

    #[test]
    fn bound_vs_oracle_dominates_probes() {
        let spec = SweepSpec {
            version: 1,
            experiment: ExperimentKind::BoundVsOracle,
            state: None,
            channel: Some(ChannelSpec::Thermal { eta: 0.5, n_b: 0.0 }),
            sigma_grid: vec![0.3],
            n_s_grid: vec![],
            cutoff: Some(40),
            rounds: None,
            seed: None,
            probes: vec![
                StateSpec::Vacuum,
                StateSpec::Tmsv { n_s: 1.0 },
                StateSpec::Tmsv { n_s: 2.0 },
            ],
            trust_floor: None,
            output_path: None,
        };
        let table = run_sweep(&spec).unwrap();
        let mut last = -1.0;
        for row in &table.rows {
            assert!(row.value <= row.bound_value.unwrap() + 1e-4);
            // brighter probes get closer to the bound
            assert!(row.value >= last - 1e-9, "{} after {last}", row.value);
            last = row.value;
        }
    }

    #[test]
    fn spec_validation_rejects_bad_grids() {
        let mut spec = basel_spec();
        spec.sigma_grid = vec![0.1, 0.5];
        assert!(spec.validate().is_err());
        let mut spec = basel_spec();
        spec.sigma_grid = vec![];
        assert!(spec.validate().is_err());
        let mut spec = basel_spec();
        spec.state = None;
        assert!(spec.validate().is_err());
        let text = r#"{"experiment":"strong_fixed_state","sigma_grid":[1.0],"bogus":1}"#;
        assert!(serde_json::from_str::<SweepSpec>(text).is_err());
    }

    #[test]
    fn truncation_floor_violations_name_the_row() {
        let mut spec = basel_spec();
        spec.cutoff = Some(100); // weight ≈ 0.994 < floor 0.999
        match run_sweep(&spec) {
            Err(Error::TruncationFloor(msg)) => assert!(msg.contains("cutoff 100")),
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn csv_output_is_deterministic_with_header_and_metadata() {
        let mut spec = basel_spec();
        spec.sigma_grid = vec![1.0, 0.5];
        spec.cutoff = Some(300);
        spec.trust_floor = Some(0.99);
        let table = run_sweep(&spec).unwrap();
        let mut buf1 = Vec::new();
        table.write_csv(&spec, &mut buf1).unwrap();
        let table2 = run_sweep(&spec).unwrap();
        let mut buf2 = Vec::new();
        table2.write_csv(&spec, &mut buf2).unwrap();
        assert_eq!(buf1, buf2);
        let text = String::from_utf8(buf1).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "sigma_bar,infidelity,truncation_weight"
        );
        assert!(text.trim_end().ends_with(&format!(
            "experiment=strong_fixed_state config_sha256={:x}",
            Sha256::digest(serde_json::to_string(&spec).unwrap().as_bytes())
        )));
    }
}
