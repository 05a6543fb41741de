//! Secret-key-rate bound evaluators.
//!
//! For an `(n, P↔, ε)` secret-key-agreement protocol over a pure-loss channel
//! of transmissivity `η`, the rate obeys
//! `P↔ ≤ -log₂(1-η) + C(ε)/n` with `C(ε) = log₂6 + 2log₂((1+ε)/(1-ε))`.
//! The thermal-channel analogue adds an entropy correction and a
//! second-order term whose relative-entropy variance `V` must be supplied by
//! the caller; this module only evaluates the arithmetic. Logarithms are
//! base 2 throughout.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Inputs for the thermal-channel bound; `v_value` is the relative-entropy
/// variance of the channel, supplied externally.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SkcBoundInput {
    pub eta: f64,
    #[serde(default)]
    pub n_b: Option<f64>,
    pub n: u64,
    pub epsilon: f64,
    /// Relative entropy `D`, supplied externally for the pre-limit bound.
    #[serde(default)]
    pub d_value: Option<f64>,
    #[serde(default)]
    pub v_value: Option<f64>,
}

/// `C(ε) = log₂6 + 2 log₂((1+ε)/(1−ε))` for `ε ∈ (0, 1)`.
pub fn c_epsilon(epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "ε must lie in (0,1), got {epsilon}"
        )));
    }
    Ok(6f64.log2() + 2.0 * ((1.0 + epsilon) / (1.0 - epsilon)).log2())
}

/// Pure-loss rate bound `-log₂(1−η) + C(ε)/n`.
pub fn pure_loss_bound(eta: f64, n: u64, epsilon: f64) -> Result<f64> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "η must lie in (0,1), got {eta}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be ≥ 1".into()));
    }
    Ok(-(1.0 - eta).log2() + c_epsilon(epsilon)? / n as f64)
}

/// Rate bound `D + √(2V/(n(1−ε))) + C(ε)/n` from externally supplied
/// relative entropy `D` and relative-entropy variance `V` (neither is
/// computed here).
pub fn rate_bound_from_entropy_data(
    d_value: f64,
    v_value: f64,
    n: u64,
    epsilon: f64,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be ≥ 1".into()));
    }
    if !(v_value >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "V must be ≥ 0, got {v_value}"
        )));
    }
    Ok(d_value
        + (2.0 * v_value / (n as f64 * (1.0 - epsilon))).sqrt()
        + c_epsilon(epsilon)? / n as f64)
}

/// Bosonic entropy function `g(N) = (N+1)log₂(N+1) − N log₂ N`, `g(0) = 0`.
pub fn bosonic_entropy(n: f64) -> Result<f64> {
    if !(n >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "photon number must be ≥ 0, got {n}"
        )));
    }
    if n == 0.0 {
        return Ok(0.0);
    }
    Ok((n + 1.0) * (n + 1.0).log2() - n * n.log2())
}

/// Term-by-term decomposition of [`thermal_bound`].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ThermalBoundTerms {
    /// `-log₂((1−η) η^{N_B})`
    pub leading: f64,
    /// `-g(N_B)`
    pub entropy_correction: f64,
    /// `√(2V/(n(1−ε)))`
    pub second_order: f64,
    /// `C(ε)/n`
    pub finite_n: f64,
}

impl ThermalBoundTerms {
    pub fn total(&self) -> f64 {
        self.leading + self.entropy_correction + self.second_order + self.finite_n
    }
}

/// Thermal-channel rate bound
/// `-log₂((1−η)η^{N_B}) − g(N_B) + √(2V/(n(1−ε))) + C(ε)/n`,
/// with the relative-entropy variance `V ≥ 0` supplied by the caller.
pub fn thermal_bound(
    eta: f64,
    n_b: f64,
    n: u64,
    epsilon: f64,
    v_value: Option<f64>,
) -> Result<ThermalBoundTerms> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "η must lie in (0,1), got {eta}"
        )));
    }
    if !(n_b >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "N_B must be ≥ 0, got {n_b}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be ≥ 1".into()));
    }
    let v = v_value.ok_or_else(|| {
        Error::InvalidParameter(
            "thermal bound needs the relative-entropy variance V as an input".into(),
        )
    })?;
    if !(v >= 0.0) {
        return Err(Error::InvalidParameter(format!("V must be ≥ 0, got {v}")));
    }
    Ok(ThermalBoundTerms {
        leading: -((1.0 - eta) * eta.powf(n_b)).log2(),
        entropy_correction: -bosonic_entropy(n_b)?,
        second_order: (2.0 * v / (n as f64 * (1.0 - epsilon))).sqrt(),
        finite_n: c_epsilon(epsilon)? / n as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_epsilon_limits_and_instances() {
        // ε → 0 leaves only log₂6
        assert!((c_epsilon(1e-12).unwrap() - 6f64.log2()).abs() < 1e-10);
        assert!((6f64.log2() - 2.584962500721156).abs() < 1e-14);
        // independent arithmetic route: all natural logs
        let eps = 0.1f64;
        let independent = (6f64.ln() + 2.0 * (1.1f64 / 0.9).ln()) / 2f64.ln();
        assert!((c_epsilon(eps).unwrap() - independent).abs() < 1e-13);
        // ε = 0.5: log₂6 + 2log₂3
        assert!((c_epsilon(0.5).unwrap() - (6f64.log2() + 2.0 * 3f64.log2())).abs() < 1e-13);
        assert!(c_epsilon(0.0).is_err());
        assert!(c_epsilon(1.0).is_err());
    }

    #[test]
    fn c_epsilon_is_strictly_increasing() {
        let mut last = 0.0;
        for i in 1..20 {
            let v = c_epsilon(i as f64 / 20.0).unwrap();
            assert!(v > last);
            last = v;
        }
    }

    #[test]
    fn pure_loss_bound_instances() {
        // η = 1/2, n → ∞: one bit per use
        assert!((pure_loss_bound(0.5, u64::MAX, 0.1).unwrap() - 1.0).abs() < 1e-12);
        let b = pure_loss_bound(0.5, 100, 0.1).unwrap();
        let c = c_epsilon(0.1).unwrap();
        assert!((b - (1.0 + c / 100.0)).abs() < 1e-13);
        // decreasing in n
        assert!(pure_loss_bound(0.5, 10, 0.1).unwrap() > pure_loss_bound(0.5, 100, 0.1).unwrap());
        assert!(pure_loss_bound(1.0, 10, 0.1).is_err());
    }

    #[test]
    fn finite_n_gap_is_exactly_c_over_n() {
        let c = c_epsilon(0.25).unwrap();
        for n in [1u64, 7, 100, 10_000] {
            let gap = pure_loss_bound(0.3, n, 0.25).unwrap() - (-(0.7f64).log2());
            assert!((gap - c / n as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn thermal_bound_reduces_to_pure_loss_leading_term() {
        let t = thermal_bound(0.5, 0.0, 1_000_000, 0.1, Some(0.0)).unwrap();
        assert_eq!(t.entropy_correction, 0.0);
        assert_eq!(t.second_order, 0.0);
        assert!((t.leading - 1.0).abs() < 1e-12);
    }

    #[test]
    fn thermal_bound_terms_sum_to_total() {
        let t = thermal_bound(0.5, 1.0, 100, 0.1, Some(2.0)).unwrap();
        let by_hand = t.leading + t.entropy_correction + t.second_order + t.finite_n;
        assert!((t.total() - by_hand).abs() < 1e-14);
        // regression pin, evaluated term by term with independent arithmetic
        let lead = -(0.5f64 * 0.5f64).log2(); // -(log2((1-η)η^1)) at η=1/2
        let g1 = 2.0 * 2f64.log2() - 0.0; // g(1) = 2log₂2 − 1·log₂1 = 2
        let second = (2.0f64 * 2.0 / (100.0 * 0.9)).sqrt();
        let fin = c_epsilon(0.1).unwrap() / 100.0;
        assert!((t.total() - (lead - g1 + second + fin)).abs() < 1e-12);
    }

    #[test]
    fn thermal_bound_requires_v() {
        assert!(thermal_bound(0.5, 1.0, 100, 0.1, None).is_err());
        assert!(thermal_bound(0.5, 1.0, 100, 0.1, Some(-1.0)).is_err());
    }

    #[test]
    fn entropy_data_bound_is_plain_arithmetic() {
        let v = rate_bound_from_entropy_data(1.5, 2.0, 100, 0.1).unwrap();
        let expect = 1.5 + (2.0f64 * 2.0 / (100.0 * 0.9)).sqrt() + c_epsilon(0.1).unwrap() / 100.0;
        assert!((v - expect).abs() < 1e-14);
        // the thermal bound is this arithmetic with the closed-form limit of D
        let t = thermal_bound(0.5, 1.0, 100, 0.1, Some(2.0)).unwrap();
        let d_limit = t.leading + t.entropy_correction;
        let via_general = rate_bound_from_entropy_data(d_limit, 2.0, 100, 0.1).unwrap();
        assert!((t.total() - via_general).abs() < 1e-13);
        assert!(rate_bound_from_entropy_data(1.0, -1.0, 10, 0.1).is_err());
    }

    #[test]
    fn bosonic_entropy_values() {
        assert_eq!(bosonic_entropy(0.0).unwrap(), 0.0);
        assert!((bosonic_entropy(1.0).unwrap() - 2.0).abs() < 1e-14);
        assert!(bosonic_entropy(-0.5).is_err());
    }
}
