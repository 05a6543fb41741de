//! Truncated photon-number-basis oracle.
//!
//! Everything in this module works with explicit density matrices at a finite
//! photon-number cutoff and makes no use of Gaussian closed forms, so it can
//! serve as an independent brute-force check on the covariance-level algebra.
//! Every state that the toolkit needs here (two-mode squeezed vacuum, thermal
//! and Basel states, and their images under the phase-insensitive channels)
//! has real matrix elements in the number basis, so density matrices are
//! stored as real symmetric matrices.
//!
//! Channels act through [`NumberKernel`]s: phase-insensitive maps preserve
//! the matrix diagonals `ρ[m, m-d]`, so a channel is a family of per-diagonal
//! transfer matrices. The teleportation channel's kernel is built by radial
//! quadrature over displacement matrix elements; loss and amplification come
//! from their exact banded Kraus operators.

mod char_fn;
mod kernel;
mod metrics;
mod state;

pub use char_fn::{
    char_function_fock_diagonal, entanglement_infidelity_teleport, CharacteristicFunction,
};
pub use kernel::{apply_teleport_channel_fock, NumberKernel};
pub use metrics::{fidelity_fock, trace_distance_fock};
pub use state::{
    make_basel_classical, make_basel_reduced, make_basel_state, make_thermal_fock, make_tmsv_fock,
    FockState,
};

/// States whose captured trace falls below this are flagged as untrusted.
pub const DEFAULT_TRUST_FLOOR: f64 = 1.0 - 1e-6;

/// Default cutoff for matrix-level two-mode oracle work.
pub const DEFAULT_ORACLE_CUTOFF: usize = 60;

/// Default cutoff for scalar Basel-state integrals, which are cheap.
pub const DEFAULT_BASEL_CUTOFF: usize = 2000;

/// `ln(n!)` by direct accumulation; exact to rounding for the sizes used.
pub(crate) fn ln_factorial(n: usize) -> f64 {
    let mut acc = 0.0;
    for k in 2..=n {
        acc += (k as f64).ln();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_factorial_small_values() {
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(ln_factorial(1), 0.0);
        assert!((ln_factorial(5) - 120f64.ln()).abs() < 1e-12);
        assert!((ln_factorial(20) - 2.43290200817664e18f64.ln()).abs() < 1e-10);
    }
}
