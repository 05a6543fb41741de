//! Density matrices at a photon-number cutoff.

use nalgebra::{DMatrix, DVector};

use super::DEFAULT_TRUST_FLOOR;
use crate::{Error, Result};

/// A one- or two-mode density matrix truncated at photon number `cutoff`.
///
/// Two-mode indices are flattened as `n_0 * (cutoff+1) + n_1`. The matrix is
/// real symmetric (see the module docs) with unit trace; `truncation_weight`
/// records how much trace the untruncated object had inside the cutoff before
/// renormalization.
#[derive(Debug, Clone)]
pub struct FockState {
    modes: usize,
    cutoff: usize,
    mat: DMatrix<f64>,
    truncation_weight: f64,
}

/// Hermiticity/positivity/trace diagnostics from [`FockState::validate`].
#[derive(Debug, Clone, Copy)]
pub struct FockCheck {
    pub symmetry_defect: f64,
    pub min_eigenvalue: f64,
    pub trace_defect: f64,
}

impl FockState {
    pub fn new(
        modes: usize,
        cutoff: usize,
        mat: DMatrix<f64>,
        truncation_weight: f64,
    ) -> Result<Self> {
        if modes == 0 || modes > 2 {
            return Err(Error::InvalidParameter(format!(
                "oracle supports 1 or 2 modes, got {modes}"
            )));
        }
        let dim = (cutoff + 1).pow(modes as u32);
        if mat.nrows() != dim || mat.ncols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, expected {dim}x{dim}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        Ok(Self {
            modes,
            cutoff,
            mat,
            truncation_weight,
        })
    }

    /// A pure state from its real amplitude vector (renormalized; the squared
    /// norm inside the cutoff is recorded as the truncation weight).
    pub fn from_pure(modes: usize, cutoff: usize, amplitudes: &[f64]) -> Result<Self> {
        let dim = (cutoff + 1).pow(modes as u32);
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes, expected {dim}",
                amplitudes.len()
            )));
        }
        let norm2: f64 = amplitudes.iter().map(|a| a * a).sum();
        if norm2 <= 0.0 {
            return Err(Error::InvalidParameter("zero amplitude vector".into()));
        }
        let v = DVector::from_column_slice(amplitudes) / norm2.sqrt();
        let mat = &v * v.transpose();
        Self::new(modes, cutoff, mat, norm2)
    }

    pub fn vacuum(modes: usize, cutoff: usize) -> Self {
        let dim = (cutoff + 1).pow(modes as u32);
        let mut mat = DMatrix::zeros(dim, dim);
        mat[(0, 0)] = 1.0;
        Self {
            modes,
            cutoff,
            mat,
            truncation_weight: 1.0,
        }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }
    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }
    pub fn truncation_weight(&self) -> f64 {
        self.truncation_weight
    }

    /// Whether the captured trace clears the given floor (or the default).
    pub fn trusted(&self, floor: Option<f64>) -> bool {
        self.truncation_weight >= floor.unwrap_or(DEFAULT_TRUST_FLOOR)
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace()
    }

    pub fn purity(&self) -> f64 {
        self.mat.iter().map(|x| x * x).sum()
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if i != j && self.mat[(i, j)].abs() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn validate(&self) -> FockCheck {
        let symmetry_defect = (&self.mat - self.mat.transpose()).amax();
        let min_eigenvalue = self.mat.clone().symmetric_eigen().eigenvalues.min();
        FockCheck {
            symmetry_defect,
            min_eigenvalue,
            trace_defect: (self.trace() - 1.0).abs(),
        }
    }

    /// Mean photon number of one mode.
    pub fn mean_photon(&self, mode: usize) -> Result<f64> {
        if mode >= self.modes {
            return Err(Error::DimensionMismatch(format!(
                "mode {mode} of {}",
                self.modes
            )));
        }
        let c = self.cutoff + 1;
        let mut acc = 0.0;
        for i in 0..self.dim() {
            let n = if self.modes == 1 {
                i
            } else if mode == 0 {
                i / c
            } else {
                i % c
            };
            acc += n as f64 * self.mat[(i, i)];
        }
        Ok(acc)
    }

    /// Tensor product (self becomes mode 0).
    pub fn tensor(&self, other: &FockState) -> Result<FockState> {
        if self.modes != 1 || other.modes != 1 || self.cutoff != other.cutoff {
            return Err(Error::DimensionMismatch(
                "tensor needs two single-mode states at the same cutoff".into(),
            ));
        }
        let mat = self.mat.kronecker(&other.mat);
        FockState::new(
            2,
            self.cutoff,
            mat,
            self.truncation_weight * other.truncation_weight,
        )
    }

    /// Reduced state of one mode of a two-mode state.
    pub fn partial_trace(&self, keep: usize) -> Result<FockState> {
        if self.modes != 2 || keep > 1 {
            return Err(Error::DimensionMismatch(
                "partial trace applies to a two-mode state".into(),
            ));
        }
        let c = self.cutoff + 1;
        let mut red = DMatrix::zeros(c, c);
        for a in 0..c {
            for b in 0..c {
                let mut acc = 0.0;
                for e in 0..c {
                    let (i, j) = if keep == 0 {
                        (a * c + e, b * c + e)
                    } else {
                        (e * c + a, e * c + b)
                    };
                    acc += self.mat[(i, j)];
                }
                red[(a, b)] = acc;
            }
        }
        FockState::new(1, self.cutoff, red, self.truncation_weight)
    }

    /// A two-mode purification `Σ √λ_i |v_i⟩|i⟩` of a single-mode state.
    pub fn purify(&self) -> Result<FockState> {
        if self.modes != 1 {
            return Err(Error::DimensionMismatch(
                "purification implemented for single-mode states".into(),
            ));
        }
        let c = self.cutoff + 1;
        let eig = self.mat.clone().symmetric_eigen();
        let mut amps = vec![0.0; c * c];
        for i in 0..c {
            let lam = eig.eigenvalues[i].max(0.0);
            let s = lam.sqrt();
            for r in 0..c {
                amps[r * c + i] = s * eig.eigenvectors[(r, i)];
            }
        }
        FockState::from_pure(2, self.cutoff, &amps)
    }

    /// Conjugation `ρ ↦ O ρ Oᵀ` by a real orthogonal matrix, for
    /// unitary-invariance checks.
    pub fn conjugate_orthogonal(&self, o: &DMatrix<f64>) -> Result<FockState> {
        if o.nrows() != self.dim() || o.ncols() != self.dim() {
            return Err(Error::DimensionMismatch("orthogonal matrix size".into()));
        }
        FockState::new(
            self.modes,
            self.cutoff,
            o * &self.mat * o.transpose(),
            self.truncation_weight,
        )
    }

    /// Overlap `⟨ψ|ρ|ψ⟩` with a pure state given by `other` (must be pure).
    /// Both matrices are symmetric, so `Tr(AB)` is an elementwise sum.
    pub fn overlap_with_pure(&self, pure: &FockState) -> Result<f64> {
        if pure.dim() != self.dim() {
            return Err(Error::DimensionMismatch("overlap dimensions".into()));
        }
        Ok(pure
            .mat
            .iter()
            .zip(self.mat.iter())
            .map(|(a, b)| a * b)
            .sum())
    }

    /// First and second quadrature moments `(μ, V)` in the toolkit's
    /// covariance conventions, for cross-checking against the Gaussian level.
    ///
    /// Real density matrices have vanishing `⟨a⟩ − ⟨a†⟩` and `⟨a²⟩ − ⟨a†²⟩`
    /// contractions, so all `q`–`p` cross moments are identically zero.
    pub fn moments(&self) -> (DVector<f64>, DMatrix<f64>) {
        let m = self.modes;
        let mut mean = DVector::zeros(2 * m);
        let mut cov = DMatrix::zeros(2 * m, 2 * m);
        // ⟨q_i⟩ = √2 · E[a_i] for real ρ
        for i in 0..m {
            let e_a = self.word(&[(i, false)]);
            mean[i] = 2f64.sqrt() * e_a;
            mean[m + i] = 0.0;
        }
        for i in 0..m {
            for j in 0..m {
                // q_i q_j = (a_i + a_i†)(a_j + a_j†)/2
                let s = self.word(&[(i, false), (j, false)])
                    + self.word(&[(i, false), (j, true)])
                    + self.word(&[(i, true), (j, false)])
                    + self.word(&[(i, true), (j, true)]);
                let qq = 0.5 * s;
                // p_i p_j = -(a_i - a_i†)(a_j - a_j†)/2
                let t = self.word(&[(i, false), (j, false)])
                    - self.word(&[(i, false), (j, true)])
                    - self.word(&[(i, true), (j, false)])
                    + self.word(&[(i, true), (j, true)]);
                let pp = -0.5 * t;
                // anticommutator average, minus the mean outer product
                let qji = if i == j {
                    qq
                } else {
                    0.5 * (qq + self.qq_ji(j, i))
                };
                let pji = if i == j {
                    pp
                } else {
                    0.5 * (pp + self.pp_ji(j, i))
                };
                cov[(i, j)] = 2.0 * qji - 2.0 * mean[i] * mean[j];
                cov[(m + i, m + j)] = 2.0 * pji;
            }
        }
        (mean, cov)
    }

    fn qq_ji(&self, i: usize, j: usize) -> f64 {
        0.5 * (self.word(&[(i, false), (j, false)])
            + self.word(&[(i, false), (j, true)])
            + self.word(&[(i, true), (j, false)])
            + self.word(&[(i, true), (j, true)]))
    }

    fn pp_ji(&self, i: usize, j: usize) -> f64 {
        -0.5 * (self.word(&[(i, false), (j, false)])
            - self.word(&[(i, false), (j, true)])
            - self.word(&[(i, true), (j, false)])
            + self.word(&[(i, true), (j, true)]))
    }

    /// `Tr(ρ · L₁L₂…)` for a word of ladder operators; `(mode, raise)`.
    /// Each word maps basis kets to single basis kets, so the trace is a
    /// single sweep over the basis.
    fn word(&self, ops: &[(usize, bool)]) -> f64 {
        let c = self.cutoff + 1;
        let dim = self.dim();
        let mut acc = 0.0;
        'basis: for idx in 0..dim {
            // apply the word right-to-left to |idx⟩
            let mut ns = [0usize; 2];
            if self.modes == 1 {
                ns[0] = idx;
            } else {
                ns[0] = idx / c;
                ns[1] = idx % c;
            }
            let mut coeff = 1.0;
            for &(mode, raise) in ops.iter().rev() {
                let n = ns[mode];
                if raise {
                    if n + 1 > self.cutoff {
                        continue 'basis;
                    }
                    coeff *= ((n + 1) as f64).sqrt();
                    ns[mode] = n + 1;
                } else {
                    if n == 0 {
                        continue 'basis;
                    }
                    coeff *= (n as f64).sqrt();
                    ns[mode] = n - 1;
                }
            }
            let target = if self.modes == 1 {
                ns[0]
            } else {
                ns[0] * c + ns[1]
            };
            acc += coeff * self.mat[(idx, target)];
        }
        acc
    }
}

/// Thermal state populations `(1/(N+1)) (N/(N+1))^n`.
pub fn make_thermal_fock(n_b: f64, cutoff: usize) -> Result<FockState> {
    if !(n_b >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "thermal photon number must be ≥ 0, got {n_b}"
        )));
    }
    let c = cutoff + 1;
    let mut mat = DMatrix::zeros(c, c);
    let ratio = n_b / (n_b + 1.0);
    let mut p = 1.0 / (n_b + 1.0);
    let mut weight = 0.0;
    for n in 0..c {
        mat[(n, n)] = p;
        weight += p;
        p *= ratio;
    }
    mat /= weight;
    FockState::new(1, cutoff, mat, weight)
}

/// Two-mode squeezed vacuum `Σ √(N^n/(N+1)^{n+1}) |n,n⟩`.
pub fn make_tmsv_fock(n_s: f64, cutoff: usize) -> Result<FockState> {
    if !(n_s >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "TMSV photon number must be ≥ 0, got {n_s}"
        )));
    }
    let c = cutoff + 1;
    let mut amps = vec![0.0; c * c];
    let ratio = (n_s / (n_s + 1.0)).sqrt();
    let mut a = (1.0 / (n_s + 1.0)).sqrt();
    for n in 0..c {
        amps[n * c + n] = a;
        a *= ratio;
    }
    FockState::from_pure(2, cutoff, &amps)
}

/// The entangled Basel state: amplitudes `√(6/π²) / n` on `|n,n⟩`, `n ≥ 1`.
/// Normalizable with infinite mean photon number.
pub fn make_basel_state(cutoff: usize) -> Result<FockState> {
    if cutoff < 1 {
        return Err(Error::InvalidParameter(
            "Basel state needs cutoff ≥ 1".into(),
        ));
    }
    let c = cutoff + 1;
    let norm = (6.0 / (std::f64::consts::PI * std::f64::consts::PI)).sqrt();
    let mut amps = vec![0.0; c * c];
    for n in 1..c {
        amps[n * c + n] = norm / n as f64;
    }
    FockState::from_pure(2, cutoff, &amps)
}

/// The reduced (single-mode) Basel state `(6/π²) Σ n⁻² |n⟩⟨n|`, usable at
/// large cutoffs where the two-mode matrix would be prohibitive. This is the
/// reduced state of both [`make_basel_state`] and [`make_basel_classical`].
pub fn make_basel_reduced(cutoff: usize) -> Result<FockState> {
    if cutoff < 1 {
        return Err(Error::InvalidParameter(
            "Basel state needs cutoff ≥ 1".into(),
        ));
    }
    let c = cutoff + 1;
    let w = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
    let mut mat = DMatrix::zeros(c, c);
    let mut weight = 0.0;
    for n in 1..c {
        let p = w / (n * n) as f64;
        mat[(n, n)] = p;
        weight += p;
    }
    mat /= weight;
    FockState::new(1, cutoff, mat, weight)
}

/// The classically correlated (dephased) Basel state:
/// `(6/π²) Σ n⁻² |n⟩⟨n| ⊗ |n⟩⟨n|`.
pub fn make_basel_classical(cutoff: usize) -> Result<FockState> {
    if cutoff < 1 {
        return Err(Error::InvalidParameter(
            "Basel state needs cutoff ≥ 1".into(),
        ));
    }
    let c = cutoff + 1;
    let w = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
    let mut mat = DMatrix::zeros(c * c, c * c);
    let mut weight = 0.0;
    for n in 1..c {
        let p = w / (n * n) as f64;
        mat[(n * c + n, n * c + n)] = p;
        weight += p;
    }
    mat /= weight;
    FockState::new(2, cutoff, mat, weight)
}
