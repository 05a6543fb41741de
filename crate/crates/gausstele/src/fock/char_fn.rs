//! Characteristic functions of number-diagonal states and the teleportation
//! infidelity integral.
//!
//! For a diagonal state `ρ = Σ p_n |n⟩⟨n|` the characteristic function is
//! circularly symmetric: `χ(α) = Σ p_n e^{-|α|²/2} L_n(|α|²)`, evaluated with
//! the bounded recurrence `b_n(u) = e^{-u/2} L_n(u)`. The entanglement
//! infidelity of the teleportation channel with respect to a pure input whose
//! reduced state is `ρ` is then the radial integral
//! `ε = 1 − ∫ du (e^{-u/σ̄}/σ̄) χ(u)²`.

use nalgebra::Complex;

use super::state::FockState;
use crate::quad::adaptive;
use crate::{Error, Result};

/// Circularly symmetric characteristic function of a number-diagonal state.
#[derive(Debug, Clone)]
pub struct CharacteristicFunction {
    populations: Vec<f64>,
}

impl CharacteristicFunction {
    /// `χ` at radial argument `u = |α|²`.
    pub fn eval_radial(&self, u: f64) -> f64 {
        let nmax = self.populations.len() - 1;
        // b_n(u) = e^{-u/2} L_n(u); (n+1) b_{n+1} = (2n+1-u) b_n - n b_{n-1}
        let mut acc = 0.0;
        let mut b_prev = 0.0;
        let mut b = (-0.5 * u).exp();
        acc += self.populations[0] * b;
        for n in 0..nmax {
            let nf = n as f64;
            let b_next = ((2.0 * nf + 1.0 - u) * b - nf * b_prev) / (nf + 1.0);
            b_prev = b;
            b = b_next;
            acc += self.populations[n + 1] * b;
        }
        acc
    }

    /// `χ(α) = Tr{D(α)ρ}`; real for number-diagonal states.
    pub fn eval(&self, alpha: Complex<f64>) -> Complex<f64> {
        Complex::new(self.eval_radial(alpha.norm_sqr()), 0.0)
    }
}

/// Characteristic function of a single-mode, number-diagonal state.
pub fn char_function_fock_diagonal(state: &FockState) -> Result<CharacteristicFunction> {
    if state.modes() != 1 {
        return Err(Error::DimensionMismatch(
            "characteristic function implemented for single-mode states".into(),
        ));
    }
    if !state.is_diagonal(1e-12) {
        return Err(Error::InvalidParameter(
            "characteristic function implemented for number-diagonal states".into(),
        ));
    }
    let populations = (0..state.dim()).map(|n| state.matrix()[(n, n)]).collect();
    Ok(CharacteristicFunction { populations })
}

/// Entanglement infidelity `ε(σ̄, ψ) = 1 − ∫ d²α G_σ̄(α) |χ(α)|²` of the
/// teleportation channel for a pure input with number-diagonal reduced state,
/// by adaptive radial quadrature (absolute error budget 1e-8).
pub fn entanglement_infidelity_teleport(state_reduced: &FockState, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "teleportation variance must be > 0, got {sigma}"
        )));
    }
    let chi = char_function_fock_diagonal(state_reduced)?;
    let (val, _err) = adaptive(
        |u| {
            let c = chi.eval_radial(u);
            (-u / sigma).exp() / sigma * c * c
        },
        0.0,
        40.0 * sigma,
        1e-9,
    )?;
    Ok((1.0 - val).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::super::state::{make_basel_reduced, make_thermal_fock, FockState};
    use super::*;

    #[test]
    fn vacuum_characteristic_function_is_gaussian() {
        let vac = FockState::vacuum(1, 5);
        let chi = char_function_fock_diagonal(&vac).unwrap();
        for u in [0.0, 0.4, 2.0, 9.0] {
            assert!((chi.eval_radial(u) - (-0.5 * u).exp()).abs() < 1e-14);
        }
        assert!((chi.eval(Complex::new(0.0, 0.0)).re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn thermal_characteristic_function_matches_closed_form() {
        let n = 0.8;
        let th = make_thermal_fock(n, 400).unwrap();
        let chi = char_function_fock_diagonal(&th).unwrap();
        for u in [0.1, 0.5, 1.5, 4.0] {
            let expect = (-(2.0 * n + 1.0) * u / 2.0).exp();
            assert!(
                (chi.eval_radial(u) - expect).abs() < 1e-8,
                "u={u}: {} vs {expect}",
                chi.eval_radial(u)
            );
        }
    }

    #[test]
    fn characteristic_function_is_normalized_and_bounded() {
        let basel_red = make_basel_reduced(300).unwrap();
        let chi = char_function_fock_diagonal(&basel_red).unwrap();
        assert!((chi.eval_radial(0.0) - 1.0).abs() < 1e-10);
        let mut u = 0.01;
        while u < 60.0 {
            assert!(chi.eval_radial(u).abs() <= 1.0 + 1e-10, "u={u}");
            u *= 1.7;
        }
    }

    #[test]
    fn non_diagonal_states_are_rejected() {
        let mut amps = vec![0.0; 11];
        amps[0] = 1.0 / 2f64.sqrt();
        amps[3] = 1.0 / 2f64.sqrt();
        let st = FockState::from_pure(1, 10, &amps).unwrap();
        assert!(char_function_fock_diagonal(&st).is_err());
    }

    #[test]
    fn vacuum_infidelity_closed_form() {
        let vac = FockState::vacuum(1, 5);
        for sigma in [1.0, 0.1, 0.01] {
            let eps = entanglement_infidelity_teleport(&vac, sigma).unwrap();
            let expect = sigma / (1.0 + sigma);
            assert!((eps - expect).abs() < 1e-9, "sigma={sigma}: {eps}");
        }
    }

    #[test]
    fn tmsv_infidelity_closed_form() {
        // reduced state of TMSV(N_S) is thermal(N_S)
        let (n_s, sigma) = (1.0, 0.5);
        let th = make_thermal_fock(n_s, 300).unwrap();
        let eps = entanglement_infidelity_teleport(&th, sigma).unwrap();
        let expect = 1.0 - 1.0 / (sigma + 2.0 * sigma * n_s + 1.0);
        assert!((eps - expect).abs() < 1e-8, "{eps} vs {expect}");
    }

    #[test]
    fn basel_infidelity_decreases_toward_zero() {
        let red = make_basel_reduced(2000).unwrap();
        let grid = [1.0, 0.1, 0.01, 0.001];
        let mut last = f64::INFINITY;
        let mut final_eps = 1.0;
        for sigma in grid {
            let eps = entanglement_infidelity_teleport(&red, sigma).unwrap();
            assert!(eps < last, "sigma={sigma}: {eps} !< {last}");
            last = eps;
            final_eps = eps;
        }
        assert!(final_eps < 0.02, "{final_eps}");
        // regression pins from an independent quadrature implementation
        let eps1 = entanglement_infidelity_teleport(&red, 1.0).unwrap();
        assert!((eps1 - 0.8429434284).abs() < 1e-6, "{eps1}");
        let eps3 = entanglement_infidelity_teleport(&red, 0.001).unwrap();
        assert!((eps3 - 0.0099807470).abs() < 1e-6, "{eps3}");
    }
}
