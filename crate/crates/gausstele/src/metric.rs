//! Fidelity and the sine distance `P = √(1−F)`.
//!
//! `P` obeys the triangle inequality, is unitarily invariant, is invariant
//! under tensoring both arguments with a common state, and contracts under
//! channels; those four facts are what turn the closed-form state fidelities
//! below into uniform channel-convergence bounds.
//!
//! Closed forms provided here:
//! - the overlap of zero-mean two-mode Gaussian states, `4/√det(V₁+V₂)`;
//! - the fidelity of two thermal states,
//!   `F = [√((N₁+1)(N₂+1)) − √(N₁N₂)]⁻²`;
//! - the fidelity of two circularly symmetric complex Gaussian densities,
//!   `F = 4ξ₁ξ₂/(ξ₁+ξ₂)²`;
//! - the fidelity of zero-mean multi-mode Gaussian states from their
//!   covariance matrices.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::symplectic::{GaussianState, SymplecticForm};
use crate::{Error, Result};

/// How a [`MetricValue`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedFormThermal,
    TwoModeOverlap,
    MultimodeZeroMean,
    ClassicalGaussian,
    FockOracle,
}

/// A fidelity together with its sine distance `P = √(1−F)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricValue {
    pub fidelity: f64,
    pub p_distance: f64,
    pub method: Method,
}

impl MetricValue {
    /// Wraps a computed fidelity. Values inside `[-1e-12, 1 + 1e-12]` are
    /// clamped to `[0, 1]`; anything further out is a numerical failure.
    pub fn from_fidelity(fidelity: f64, method: Method) -> Result<Self> {
        if !((-1e-12..=1.0 + 1e-12).contains(&fidelity)) {
            return Err(Error::InvalidParameter(format!(
                "fidelity {fidelity} outside [0,1] beyond tolerance"
            )));
        }
        let f = fidelity.clamp(0.0, 1.0);
        Ok(Self {
            fidelity: f,
            p_distance: (1.0 - f).sqrt(),
            method,
        })
    }
}

/// Overlap `Tr{ωσ} = 4/√det(V₁+V₂)` of two zero-mean two-mode Gaussian
/// states. For a pure `ω` this equals the fidelity with `σ`.
pub fn overlap_two_mode_zero_mean(v1: &DMatrix<f64>, v2: &DMatrix<f64>) -> Result<f64> {
    if v1.nrows() != 4 || v1.ncols() != 4 || v2.nrows() != 4 || v2.ncols() != 4 {
        return Err(Error::DimensionMismatch(
            "overlap formula needs two 4x4 covariance matrices".into(),
        ));
    }
    let det = (v1 + v2).determinant();
    if det <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "det(V1+V2) = {det} is not positive"
        )));
    }
    Ok(4.0 / det.sqrt())
}

/// Fidelity of two thermal states of mean photon numbers `n1, n2 ≥ 0`.
pub fn fidelity_thermal_thermal(n1: f64, n2: f64) -> Result<MetricValue> {
    if !(n1 >= 0.0 && n2 >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "thermal photon numbers must be ≥ 0, got ({n1}, {n2})"
        )));
    }
    let root = ((n1 + 1.0) * (n2 + 1.0)).sqrt() - (n1 * n2).sqrt();
    MetricValue::from_fidelity(root.powi(-2), Method::ClosedFormThermal)
}

/// Fidelity of two zero-mean circularly symmetric complex Gaussian
/// distributions with variances `ξ1, ξ2 > 0`.
pub fn fidelity_classical_gaussian(xi1: f64, xi2: f64) -> Result<MetricValue> {
    if !(xi1 > 0.0 && xi2 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "variances must be positive, got ({xi1}, {xi2})"
        )));
    }
    let f = 4.0 * xi1 * xi2 / (xi1 + xi2).powi(2);
    MetricValue::from_fidelity(f, Method::ClassicalGaussian)
}

/// Overlap `Tr{ρ₁ρ₂} = 2^m/√det(V₁+V₂)` of zero-mean Gaussian states on `m`
/// modes; equals the fidelity whenever one of the two states is pure.
fn overlap_zero_mean(v1: &DMatrix<f64>, v2: &DMatrix<f64>) -> Result<f64> {
    let m = v1.nrows() / 2;
    let det = (v1 + v2).determinant();
    if det <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "det(V1+V2) = {det} is not positive"
        )));
    }
    Ok(2f64.powi(m as i32) / det.sqrt())
}

/// Purity `Tr{ρ²} = 1/√det V` of a zero-mean Gaussian state.
fn gaussian_purity(v: &DMatrix<f64>) -> f64 {
    1.0 / v.determinant().max(f64::MIN_POSITIVE).sqrt()
}

/// Fidelity of two zero-mean multi-mode Gaussian states from their
/// covariance matrices.
///
/// If either state is pure the fidelity equals the overlap
/// `2^m/√det(V₁+V₂)`, which is evaluated directly. Otherwise the
/// determinant form built on the auxiliary matrix
/// `W = Ωᵀ (v₁+v₂)⁻¹ (Ω/4 + v₂ Ω v₁)` with `v = V/2` is used: writing
/// `±iλ_j` for the eigenvalues of `WΩ`,
/// `F = √det[(v₁+v₂)⁻¹] · ∏_j (2λ_j + √(max(4λ_j² − 1, 0)))`.
///
/// Accuracy is ~1e-12 for mixed pairs and exact-to-rounding on the pure
/// branch; pairs with a pure tensor factor inside an otherwise mixed state
/// sit on the `λ = 1/2` boundary and are good to ~1e-6.
pub fn fidelity_gaussian_zero_mean(s1: &GaussianState, s2: &GaussianState) -> Result<MetricValue> {
    if s1.modes() != s2.modes() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {} modes",
            s1.modes(),
            s2.modes()
        )));
    }
    if !s1.is_zero_mean(1e-12) || !s2.is_zero_mean(1e-12) {
        return Err(Error::InvalidParameter(
            "multimode fidelity is only provided for zero-mean states".into(),
        ));
    }
    let m = s1.modes();
    if gaussian_purity(s1.cov()) > 1.0 - 1e-9 || gaussian_purity(s2.cov()) > 1.0 - 1e-9 {
        let f = overlap_zero_mean(s1.cov(), s2.cov())?;
        return MetricValue::from_fidelity(f, Method::MultimodeZeroMean);
    }
    let omega = SymplecticForm::new(m).matrix().clone();
    let v1 = s1.cov() * 0.5;
    let v2 = s2.cov() * 0.5;
    let sum_inv = (&v1 + &v2).clone().try_inverse().ok_or_else(|| {
        Error::InvalidParameter("V1 + V2 is singular in the fidelity formula".into())
    })?;
    let aux = omega.transpose() * &sum_inv * (&omega * 0.25 + &v2 * &omega * &v1);
    let eigs = (&aux * &omega).complex_eigenvalues();
    // eigenvalues come in ±iλ pairs; collect one λ per pair
    let mut lams: Vec<f64> = eigs.iter().map(|z| z.im.abs()).collect();
    lams.sort_by(f64::total_cmp);
    let lams: Vec<f64> = lams.into_iter().step_by(2).collect();
    if lams.len() != m {
        return Err(Error::InvalidParameter(
            "eigenvalue pairing failed in the fidelity formula".into(),
        ));
    }
    let mut prod = 1.0;
    for lam in &lams {
        // λ = 1/2 marks a pure factor; jitter below the clip is noise
        let arg = 4.0 * lam * lam - 1.0;
        prod *= 2.0 * lam + if arg > 1e-12 { arg.sqrt() } else { 0.0 };
    }
    let det = sum_inv.determinant();
    if det <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "det[(v1+v2)^-1] = {det} is not positive"
        )));
    }
    let f = det.sqrt() * prod;
    MetricValue::from_fidelity(f.min(1.0), Method::MultimodeZeroMean)
}

/// The two-sided bound `1 − √F ≤ ½‖ρ−σ‖₁ ≤ √(1−F)` on the trace distance.
pub fn fuchs_van_de_graaf_bounds(fidelity: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&fidelity) {
        return Err(Error::InvalidParameter(format!(
            "fidelity must lie in [0,1], got {fidelity}"
        )));
    }
    Ok((1.0 - fidelity.sqrt(), (1.0 - fidelity).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::adaptive;
    use crate::symplectic::{make_tmsv_state, random_symplectic};
    use nalgebra::DVector;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn tmsv_after_noise(n_s: f64, sigma: f64) -> GaussianState {
        let st = make_tmsv_state(n_s).unwrap();
        crate::channel::GaussianChannel::additive_noise(sigma)
            .unwrap()
            .apply_on_subsystem(&st, &[1])
            .unwrap()
    }

    #[test]
    fn metric_value_clamps_and_rejects() {
        let m = MetricValue::from_fidelity(1.0 + 5e-13, Method::FockOracle).unwrap();
        assert_eq!(m.fidelity, 1.0);
        assert_eq!(m.p_distance, 0.0);
        assert!(MetricValue::from_fidelity(1.0 + 1e-10, Method::FockOracle).is_err());
        assert!(MetricValue::from_fidelity(-1e-3, Method::FockOracle).is_err());
        let m = MetricValue::from_fidelity(0.75, Method::FockOracle).unwrap();
        assert!((m.p_distance - 0.5).abs() < 1e-14);
    }

    #[test]
    fn vacuum_self_overlap_is_one() {
        let v = DMatrix::<f64>::identity(4, 4);
        assert!((overlap_two_mode_zero_mean(&v, &v).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tmsv_noisy_overlap_matches_closed_form() {
        // ⟨Φ(N_S)| τ(N_S, σ̄) |Φ(N_S)⟩ = 1/(σ̄ + 2σ̄N_S + 1)
        for (n_s, sigma) in [(1.0, 0.5), (10.0, 0.1), (0.0, 0.7), (2.0, 0.3)] {
            let phi = make_tmsv_state(n_s).unwrap();
            let tau = tmsv_after_noise(n_s, sigma);
            let overlap = overlap_two_mode_zero_mean(phi.cov(), tau.cov()).unwrap();
            let expect = 1.0 / (sigma + 2.0 * sigma * n_s + 1.0);
            assert!(
                (overlap - expect).abs() < 1e-12,
                "n_s={n_s} sigma={sigma}: {overlap} vs {expect}"
            );
        }
        // the canonical instance: N_S = 1, σ̄ = 0.5 gives exactly 0.4
        let phi = make_tmsv_state(1.0).unwrap();
        let tau = tmsv_after_noise(1.0, 0.5);
        assert!((overlap_two_mode_zero_mean(phi.cov(), tau.cov()).unwrap() - 0.4).abs() < 1e-14);
    }

    #[test]
    fn overlap_rejects_wrong_dimension() {
        let v2 = DMatrix::<f64>::identity(2, 2);
        let v4 = DMatrix::<f64>::identity(4, 4);
        assert!(overlap_two_mode_zero_mean(&v2, &v4).is_err());
    }

    #[test]
    fn thermal_fidelity_special_cases() {
        assert!((fidelity_thermal_thermal(1.3, 1.3).unwrap().fidelity - 1.0).abs() < 1e-14);
        for x in [0.2, 1.0, 4.0] {
            let f = fidelity_thermal_thermal(0.0, x).unwrap().fidelity;
            assert!((f - 1.0 / (x + 1.0)).abs() < 1e-14);
        }
        assert!(fidelity_thermal_thermal(-0.1, 1.0).is_err());
    }

    #[test]
    fn classical_gaussian_fidelity_matches_bhattacharyya_quadrature() {
        // F = (∫ √(G_ξ1 G_ξ2) d²α)², radialized to a 1-D integral
        let pairs = [(1.0, 2.0), (0.5, 0.5), (0.3, 1.7), (2.0, 0.1)];
        for (x1, x2) in pairs {
            let f = fidelity_classical_gaussian(x1, x2).unwrap().fidelity;
            let rate = 0.5 * (1.0 / x1 + 1.0 / x2);
            let upper = 60.0 / rate;
            let (bhat, _) = adaptive(
                |u| (-(u) * rate).exp() / (x1 * x2).sqrt(),
                0.0,
                upper,
                1e-12,
            )
            .unwrap();
            assert!(
                (f - bhat * bhat).abs() < 1e-10,
                "({x1},{x2}): {f} vs {}",
                bhat * bhat
            );
        }
        assert!(
            (fidelity_classical_gaussian(1.0, 2.0).unwrap().fidelity - 8.0 / 9.0).abs() < 1e-14
        );
        assert!(fidelity_classical_gaussian(0.0, 1.0).is_err());
    }

    #[test]
    fn multimode_fidelity_of_identical_states_is_one() {
        let st = make_tmsv_state(1.7).unwrap();
        let f = fidelity_gaussian_zero_mean(&st, &st).unwrap();
        assert!((f.fidelity - 1.0).abs() < 1e-9);
    }

    #[test]
    fn multimode_fidelity_reduces_to_thermal_closed_form() {
        for (n1, n2) in [(0.0, 0.0), (1.0, 1.2), (0.3, 2.0), (0.0, 3.0)] {
            let s1 = GaussianState::thermal(n1).unwrap();
            let s2 = GaussianState::thermal(n2).unwrap();
            let f = fidelity_gaussian_zero_mean(&s1, &s2).unwrap().fidelity;
            let closed = fidelity_thermal_thermal(n1, n2).unwrap().fidelity;
            assert!((f - closed).abs() < 1e-10, "({n1},{n2}): {f} vs {closed}");
        }
    }

    #[test]
    fn multimode_fidelity_is_multiplicative_on_products() {
        let s1 = GaussianState::thermal(1.0)
            .unwrap()
            .tensor(&GaussianState::thermal(2.0).unwrap());
        let s2 = GaussianState::thermal(1.5)
            .unwrap()
            .tensor(&GaussianState::thermal(4.0).unwrap());
        let f = fidelity_gaussian_zero_mean(&s1, &s2).unwrap().fidelity;
        let expect = fidelity_thermal_thermal(1.0, 1.5).unwrap().fidelity
            * fidelity_thermal_thermal(2.0, 4.0).unwrap().fidelity;
        assert!((f - expect).abs() < 1e-12, "{f} vs {expect}");
    }

    #[test]
    fn multimode_fidelity_matches_two_mode_overlap_for_pure_first_argument() {
        let phi = make_tmsv_state(1.0).unwrap();
        let tau = tmsv_after_noise(1.0, 0.5);
        let f = fidelity_gaussian_zero_mean(&phi, &tau).unwrap().fidelity;
        assert!((f - 0.4).abs() < 1e-9, "{f}");
    }

    #[test]
    fn multimode_fidelity_reproduces_thermal_environment_bound() {
        // γ_E(Y) vs γ_E(Y + Δ) for thermal-channel noise blocks is a thermal
        // fidelity with the photon numbers read off the diagonals.
        let (eta, nb, sigma) = (0.5f64, 1.0f64, 0.2f64);
        let nb2 = nb + eta * sigma / (1.0 - eta);
        let env1 = GaussianState::thermal(nb).unwrap();
        let env2 = GaussianState::thermal(nb2).unwrap();
        let f = fidelity_gaussian_zero_mean(&env1, &env2).unwrap();
        let closed = fidelity_thermal_thermal(nb, nb2).unwrap();
        assert!((f.fidelity - closed.fidelity).abs() < 1e-12);
        assert!((f.p_distance - closed.p_distance).abs() < 1e-12);
    }

    #[test]
    fn multimode_fidelity_is_symmetric() {
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        for _ in 0..8 {
            let a = crate::symplectic::random_state(2, &mut rng);
            let b = crate::symplectic::random_state(2, &mut rng);
            let f_ab = fidelity_gaussian_zero_mean(&a, &b).unwrap().fidelity;
            let f_ba = fidelity_gaussian_zero_mean(&b, &a).unwrap().fidelity;
            assert!((f_ab - f_ba).abs() < 1e-12);
            assert!((0.0..=1.0).contains(&f_ab));
        }
    }

    #[test]
    fn multimode_fidelity_rejects_nonzero_means() {
        let st = GaussianState::vacuum(1);
        let displaced = st.displace(&DVector::from_vec(vec![1.0, 0.0])).unwrap();
        assert!(fidelity_gaussian_zero_mean(&st, &displaced).is_err());
    }

    #[test]
    fn multimode_fidelity_invariant_under_joint_symplectic_conjugation() {
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        for _ in 0..6 {
            let a = crate::symplectic::random_state(2, &mut rng);
            let b = crate::symplectic::random_state(2, &mut rng);
            let s = random_symplectic(2, &mut rng);
            let f0 = fidelity_gaussian_zero_mean(&a, &b).unwrap().fidelity;
            let f1 = fidelity_gaussian_zero_mean(
                &a.conjugate_symplectic(&s).unwrap(),
                &b.conjugate_symplectic(&s).unwrap(),
            )
            .unwrap()
            .fidelity;
            assert!((f0 - f1).abs() < 1e-9, "{f0} vs {f1}");
        }
    }

    #[test]
    fn p_distance_obeys_triangle_inequality_on_thermal_triples() {
        let mut rng = ChaCha12Rng::seed_from_u64(29);
        for _ in 0..40 {
            let a = rng.gen_range(0.0..3.0);
            let b = rng.gen_range(0.0..3.0);
            let c = rng.gen_range(0.0..3.0);
            let pab = fidelity_thermal_thermal(a, b).unwrap().p_distance;
            let pbc = fidelity_thermal_thermal(b, c).unwrap().p_distance;
            let pac = fidelity_thermal_thermal(a, c).unwrap().p_distance;
            assert!(pac <= pab + pbc + 1e-12);
        }
    }

    #[test]
    fn tensoring_a_common_state_leaves_p_unchanged() {
        let a = GaussianState::thermal(0.4).unwrap();
        let b = GaussianState::thermal(1.1).unwrap();
        // mixed common factor: fully generic branch
        let w = GaussianState::thermal(0.9).unwrap();
        let p0 = fidelity_gaussian_zero_mean(&a, &b).unwrap().p_distance;
        let p1 = fidelity_gaussian_zero_mean(&a.tensor(&w), &b.tensor(&w))
            .unwrap()
            .p_distance;
        assert!((p0 - p1).abs() < 1e-10, "{p0} vs {p1}");
        // pure common factor sits on the λ = 1/2 boundary
        let w = make_tmsv_state(0.8).unwrap();
        let p2 = fidelity_gaussian_zero_mean(&a.tensor(&w), &b.tensor(&w))
            .unwrap()
            .p_distance;
        assert!((p0 - p2).abs() < 1e-6, "{p0} vs {p2}");
    }

    #[test]
    fn fuchs_van_de_graaf_examples() {
        assert_eq!(fuchs_van_de_graaf_bounds(1.0).unwrap(), (0.0, 0.0));
        assert_eq!(fuchs_van_de_graaf_bounds(0.0).unwrap(), (1.0, 1.0));
        let (lo, hi) = fuchs_van_de_graaf_bounds(0.4).unwrap();
        assert!((lo - (1.0 - 0.4f64.sqrt())).abs() < 1e-15);
        assert!((hi - 0.6f64.sqrt()).abs() < 1e-15);
        assert!((lo - 0.367544).abs() < 1e-6);
        assert!((hi - 0.774597).abs() < 1e-6);
        assert!(fuchs_van_de_graaf_bounds(1.5).is_err());
    }
}
