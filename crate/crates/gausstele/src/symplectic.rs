//! Phase-space representation of multi-mode Gaussian states.
//!
//! Quadratures are ordered `(q_1, …, q_m, p_1, …, p_m)`, the symplectic form
//! is `Ω = [[0, 1], [-1, 0]] ⊗ I_m`, and the vacuum covariance matrix is the
//! identity (a thermal state of mean photon number `N` has `V = (2N+1) I`).
//! Physicality of a covariance matrix is the uncertainty-principle condition
//! `V + iΩ ⪰ 0`, and Williamson's theorem factors any physical `V` as
//! `S (D ⊕ D) Sᵀ` with `S` symplectic and symplectic eigenvalues `ν_i ≥ 1`.

use nalgebra::{DMatrix, DVector};

use crate::{Error, Result};

/// Tolerance for covariance-matrix symmetry checks.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Tolerance on the minimum eigenvalue of `V + iΩ`.
pub const PHYSICALITY_TOL: f64 = 1e-10;

/// The symplectic form `Ω` on `m` modes.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    modes: usize,
    matrix: DMatrix<f64>,
}

impl SymplecticForm {
    pub fn new(modes: usize) -> Self {
        assert!(modes > 0, "mode count must be positive");
        let n = 2 * modes;
        let mut omega = DMatrix::zeros(n, n);
        for i in 0..modes {
            omega[(i, modes + i)] = 1.0;
            omega[(modes + i, i)] = -1.0;
        }
        Self {
            modes,
            matrix: omega,
        }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Whether `s` preserves the form: `s Ω sᵀ = Ω` within `tol`.
    pub fn is_symplectic(&self, s: &DMatrix<f64>, tol: f64) -> bool {
        if s.nrows() != 2 * self.modes || s.ncols() != 2 * self.modes {
            return false;
        }
        let res = s * &self.matrix * s.transpose() - &self.matrix;
        res.amax() <= tol
    }
}

/// Result of checking `V + iΩ ⪰ 0`.
#[derive(Debug, Clone, Copy)]
pub struct CovarianceCheck {
    pub valid: bool,
    /// Minimum eigenvalue of the Hermitian matrix `V + iΩ`.
    pub min_eigenvalue: f64,
    /// Largest absolute asymmetry `|V - Vᵀ|`.
    pub symmetry_defect: f64,
}

/// Checks that `v` is a valid quantum covariance matrix for the given form.
///
/// The Hermitian matrix `V + iΩ` is embedded as the real symmetric matrix
/// `[[V, -Ω], [Ω, V]]`, whose spectrum is that of `V + iΩ` doubled.
pub fn validate_covariance(v: &DMatrix<f64>, form: &SymplecticForm) -> Result<CovarianceCheck> {
    let n = 2 * form.modes();
    if v.nrows() != n || v.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "covariance is {}x{}, form expects {}x{}",
            v.nrows(),
            v.ncols(),
            n,
            n
        )));
    }
    let symmetry_defect = (v - v.transpose()).amax();
    let omega = form.matrix();
    let mut embed = DMatrix::zeros(2 * n, 2 * n);
    embed.view_mut((0, 0), (n, n)).copy_from(v);
    embed.view_mut((n, n), (n, n)).copy_from(v);
    embed.view_mut((0, n), (n, n)).copy_from(&(-omega));
    embed.view_mut((n, 0), (n, n)).copy_from(omega);
    let eig = embed.symmetric_eigen();
    let min_eigenvalue = eig.eigenvalues.min();
    Ok(CovarianceCheck {
        valid: min_eigenvalue >= -PHYSICALITY_TOL && symmetry_defect <= SYMMETRY_TOL,
        min_eigenvalue,
        symmetry_defect,
    })
}

/// A Gaussian state: mean vector and covariance matrix on `m` modes.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    modes: usize,
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

impl GaussianState {
    /// Builds a state after validating symmetry and physicality.
    pub fn new(mean: DVector<f64>, cov: DMatrix<f64>) -> Result<Self> {
        if !mean.len().is_multiple_of(2) || mean.is_empty() {
            return Err(Error::DimensionMismatch(format!(
                "mean vector length {} is not an even positive number",
                mean.len()
            )));
        }
        let modes = mean.len() / 2;
        let form = SymplecticForm::new(modes);
        let check = validate_covariance(&cov, &form)?;
        if check.symmetry_defect > SYMMETRY_TOL {
            return Err(Error::UnphysicalCovariance(format!(
                "asymmetry {:.3e} exceeds {:.1e}",
                check.symmetry_defect, SYMMETRY_TOL
            )));
        }
        if !check.valid {
            return Err(Error::UnphysicalCovariance(format!(
                "min eig of V + iΩ is {:.6e}",
                check.min_eigenvalue
            )));
        }
        Ok(Self { modes, mean, cov })
    }

    /// The m-mode vacuum, `μ = 0`, `V = I`.
    pub fn vacuum(modes: usize) -> Self {
        Self {
            modes,
            mean: DVector::zeros(2 * modes),
            cov: DMatrix::identity(2 * modes, 2 * modes),
        }
    }

    /// Single-mode thermal state of mean photon number `n_bar ≥ 0`.
    pub fn thermal(n_bar: f64) -> Result<Self> {
        if !(n_bar >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "thermal photon number must be ≥ 0, got {n_bar}"
            )));
        }
        Ok(Self {
            modes: 1,
            mean: DVector::zeros(2),
            cov: DMatrix::identity(2, 2) * (2.0 * n_bar + 1.0),
        })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    pub fn is_zero_mean(&self, tol: f64) -> bool {
        self.mean.amax() <= tol
    }

    /// Tensor product; `self` occupies the first mode block.
    pub fn tensor(&self, other: &GaussianState) -> GaussianState {
        let m1 = self.modes;
        let m2 = other.modes;
        let m = m1 + m2;
        let mut mean = DVector::zeros(2 * m);
        let mut cov = DMatrix::zeros(2 * m, 2 * m);
        // index maps: mode i of self -> (i, m+i); mode j of other -> (m1+j, m+m1+j)
        let map1: Vec<usize> = (0..m1).chain((0..m1).map(|i| m + i)).collect();
        let map2: Vec<usize> = (0..m2)
            .map(|j| m1 + j)
            .chain((0..m2).map(|j| m + m1 + j))
            .collect();
        for (a, &ia) in map1.iter().enumerate() {
            mean[ia] = self.mean[a];
            for (b, &ib) in map1.iter().enumerate() {
                cov[(ia, ib)] = self.cov[(a, b)];
            }
        }
        for (a, &ia) in map2.iter().enumerate() {
            mean[ia] = other.mean[a];
            for (b, &ib) in map2.iter().enumerate() {
                cov[(ia, ib)] = other.cov[(a, b)];
            }
        }
        GaussianState {
            modes: m,
            mean,
            cov,
        }
    }

    /// Marginal state on the listed modes (kept in the given order).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<GaussianState> {
        for &k in keep {
            if k >= self.modes {
                return Err(Error::DimensionMismatch(format!(
                    "mode index {k} out of range for {} modes",
                    self.modes
                )));
            }
        }
        let m = keep.len();
        let idx: Vec<usize> = keep
            .iter()
            .copied()
            .chain(keep.iter().map(|&k| self.modes + k))
            .collect();
        let mut mean = DVector::zeros(2 * m);
        let mut cov = DMatrix::zeros(2 * m, 2 * m);
        for (a, &ia) in idx.iter().enumerate() {
            mean[a] = self.mean[ia];
            for (b, &ib) in idx.iter().enumerate() {
                cov[(a, b)] = self.cov[(ia, ib)];
            }
        }
        Ok(GaussianState {
            modes: m,
            mean,
            cov,
        })
    }

    /// Phase-space displacement: shifts the mean by `z`.
    pub fn displace(&self, z: &DVector<f64>) -> Result<GaussianState> {
        if z.len() != 2 * self.modes {
            return Err(Error::DimensionMismatch(format!(
                "displacement length {} for {} modes",
                z.len(),
                self.modes
            )));
        }
        Ok(GaussianState {
            modes: self.modes,
            mean: &self.mean + z,
            cov: self.cov.clone(),
        })
    }

    /// Conjugation by the Gaussian unitary with symplectic matrix `s`:
    /// `μ ↦ Sμ`, `V ↦ S V Sᵀ`.
    pub fn conjugate_symplectic(&self, s: &DMatrix<f64>) -> Result<GaussianState> {
        let n = 2 * self.modes;
        if s.nrows() != n || s.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "symplectic is {}x{}, state needs {}x{}",
                s.nrows(),
                s.ncols(),
                n,
                n
            )));
        }
        Ok(GaussianState {
            modes: self.modes,
            mean: s * &self.mean,
            cov: s * &self.cov * s.transpose(),
        })
    }
}

/// Two-mode squeezed vacuum with mean photon number `n_s` per reduced mode.
///
/// Diagonal blocks are `(2N_S+1) I` and the q/p off-diagonal couplings are
/// `±2√(N_S(N_S+1))`; at `n_s = 0` this is the two-mode vacuum.
pub fn make_tmsv_state(n_s: f64) -> Result<GaussianState> {
    if !(n_s >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "TMSV photon number must be ≥ 0, got {n_s}"
        )));
    }
    let a = 2.0 * n_s + 1.0;
    let c = 2.0 * (n_s * (n_s + 1.0)).sqrt();
    // ordering (q1, q2, p1, p2)
    let cov = DMatrix::from_row_slice(
        4,
        4,
        &[
            a, c, 0.0, 0.0, //
            c, a, 0.0, 0.0, //
            0.0, 0.0, a, -c, //
            0.0, 0.0, -c, a,
        ],
    );
    GaussianState::new(DVector::zeros(4), cov)
}

/// Williamson normal form `V = S (D ⊕ D) Sᵀ`.
#[derive(Debug, Clone)]
pub struct WilliamsonDecomposition {
    /// Symplectic matrix `S`.
    pub symplectic: DMatrix<f64>,
    /// Symplectic eigenvalues, ascending.
    pub nus: Vec<f64>,
}

impl WilliamsonDecomposition {
    /// Rebuilds the covariance matrix `S (D ⊕ D) Sᵀ`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let m = self.nus.len();
        let mut d = DMatrix::zeros(2 * m, 2 * m);
        for (i, nu) in self.nus.iter().enumerate() {
            d[(i, i)] = *nu;
            d[(m + i, m + i)] = *nu;
        }
        &self.symplectic * d * self.symplectic.transpose()
    }
}

/// Symmetric square root (and inverse root) of a positive definite matrix.
fn spd_sqrt(v: &DMatrix<f64>) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let eig = v.clone().symmetric_eigen();
    let n = v.nrows();
    let mut root = DMatrix::zeros(n, n);
    let mut inv_root = DMatrix::zeros(n, n);
    for i in 0..n {
        let lam = eig.eigenvalues[i];
        if lam <= 0.0 {
            return Err(Error::UnphysicalCovariance(format!(
                "matrix not positive definite (eigenvalue {lam:.3e})"
            )));
        }
        let s = lam.sqrt();
        let col = eig.eigenvectors.column(i);
        for r in 0..n {
            for c in 0..n {
                root[(r, c)] += s * col[r] * col[c];
                inv_root[(r, c)] += col[r] * col[c] / s;
            }
        }
    }
    Ok((root, inv_root))
}

/// Williamson decomposition of a physical covariance matrix, computed from
/// the antisymmetric matrix `V^{-1/2} Ω V^{-1/2}` (spectrally equivalent to
/// diagonalizing `iVΩ`).
///
/// Flags covariances whose symplectic spectrum dips below `1 - 1e-10`.
pub fn williamson(state: &GaussianState) -> Result<WilliamsonDecomposition> {
    williamson_of_cov(state.cov(), state.modes())
}

pub fn williamson_of_cov(v: &DMatrix<f64>, modes: usize) -> Result<WilliamsonDecomposition> {
    let form = SymplecticForm::new(modes);
    let n = 2 * modes;
    if v.nrows() != n || v.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "covariance is {}x{} for {} modes",
            v.nrows(),
            v.ncols(),
            modes
        )));
    }
    let (v_root, v_inv_root) = spd_sqrt(v)?;
    // r is antisymmetric; -r² is PSD with eigenvalues 1/ν² doubled.
    let r = &v_inv_root * form.matrix() * &v_inv_root;
    let mut a = -(&r * &r);
    // symmetrize against rounding
    a = (&a + a.transpose()) * 0.5;
    let eig = a.symmetric_eigen();
    // sort by eigenvalue descending: b = 1/ν descending means ν ascending
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));

    let scale = eig.eigenvalues.amax().max(1e-300);
    let mut used = vec![false; n];
    let mut pairs: Vec<(f64, DVector<f64>, DVector<f64>)> = Vec::with_capacity(modes);
    for &i in &order {
        if used[i] || pairs.len() == modes {
            continue;
        }
        let b2 = eig.eigenvalues[i].max(0.0);
        let b = b2.sqrt();
        if b <= 1e-14 {
            return Err(Error::UnphysicalCovariance(
                "vanishing symplectic eigenvalue candidate".into(),
            ));
        }
        // u: eigenvector orthogonalized against previously chosen pairs that
        // share (numerically) the same eigenvalue.
        let mut u: DVector<f64> = eig.eigenvectors.column(i).into();
        for (bp, up, wp) in &pairs {
            if (bp * bp - b2).abs() <= 1e-8 * scale {
                let proj_u = up.dot(&u);
                let proj_w = wp.dot(&u);
                u -= up * proj_u + wp * proj_w;
            }
        }
        let norm = u.norm();
        if norm < 1e-6 {
            used[i] = true;
            continue; // direction already captured by an earlier pair
        }
        u /= norm;
        let nu = 1.0 / b;
        let w = -(&r * &u) * nu;
        used[i] = true;
        pairs.push((b, u, w));
    }
    if pairs.len() != modes {
        return Err(Error::UnphysicalCovariance(format!(
            "found {} symplectic pairs, expected {}",
            pairs.len(),
            modes
        )));
    }

    let mut k = DMatrix::zeros(n, n);
    let mut nus = Vec::with_capacity(modes);
    for (j, (b, u, w)) in pairs.iter().enumerate() {
        nus.push(1.0 / b);
        for r_ in 0..n {
            k[(r_, j)] = u[r_];
            k[(r_, modes + j)] = w[r_];
        }
    }
    // S = V^{1/2} K (D ⊕ D)^{-1/2}
    let mut d_inv_root = DMatrix::zeros(n, n);
    for (j, nu) in nus.iter().enumerate() {
        let s = 1.0 / nu.sqrt();
        d_inv_root[(j, j)] = s;
        d_inv_root[(modes + j, modes + j)] = s;
    }
    let s = &v_root * &k * d_inv_root;

    if nus.iter().any(|nu| *nu < 1.0 - PHYSICALITY_TOL) {
        return Err(Error::UnphysicalCovariance(format!(
            "symplectic eigenvalue {:.12} below 1",
            nus.iter().cloned().fold(f64::INFINITY, f64::min)
        )));
    }
    Ok(WilliamsonDecomposition { symplectic: s, nus })
}

/// Symplectic matrix of a two-mode beamsplitter of transmissivity `η`,
/// acting on modes `(i, j)` of an `m`-mode system.
pub fn beamsplitter_symplectic(modes: usize, i: usize, j: usize, eta: f64) -> DMatrix<f64> {
    assert!(i < modes && j < modes && i != j);
    let c = eta.sqrt();
    let s = (1.0 - eta).sqrt();
    let mut m = DMatrix::identity(2 * modes, 2 * modes);
    for off in [0, modes] {
        m[(off + i, off + i)] = c;
        m[(off + i, off + j)] = s;
        m[(off + j, off + i)] = -s;
        m[(off + j, off + j)] = c;
    }
    m
}

/// Symplectic matrix of a two-mode squeezer of gain `G ≥ 1` on modes `(i, j)`.
pub fn two_mode_squeezer_symplectic(modes: usize, i: usize, j: usize, gain: f64) -> DMatrix<f64> {
    assert!(i < modes && j < modes && i != j);
    let c = gain.sqrt();
    let s = (gain - 1.0).sqrt();
    let mut m = DMatrix::identity(2 * modes, 2 * modes);
    // q block couples with +s, p block with -s
    m[(i, i)] = c;
    m[(i, j)] = s;
    m[(j, i)] = s;
    m[(j, j)] = c;
    let (i, j) = (modes + i, modes + j);
    m[(i, i)] = c;
    m[(i, j)] = -s;
    m[(j, i)] = -s;
    m[(j, j)] = c;
    m
}

/// Single-mode squeezer `diag(e^r, e^{-r})` on mode `i`.
pub fn squeezer_symplectic(modes: usize, i: usize, r: f64) -> DMatrix<f64> {
    assert!(i < modes);
    let mut m = DMatrix::identity(2 * modes, 2 * modes);
    m[(i, i)] = r.exp();
    m[(modes + i, modes + i)] = (-r).exp();
    m
}

/// Phase rotation by `θ` on mode `i`.
pub fn rotation_symplectic(modes: usize, i: usize, theta: f64) -> DMatrix<f64> {
    assert!(i < modes);
    let mut m = DMatrix::identity(2 * modes, 2 * modes);
    let (s, c) = theta.sin_cos();
    m[(i, i)] = c;
    m[(i, modes + i)] = s;
    m[(modes + i, i)] = -s;
    m[(modes + i, modes + i)] = c;
    m
}

/// A random symplectic built from beamsplitter, squeezer, and rotation
/// generators; used by randomized invariance tests and sweep adaptors.
pub fn random_symplectic<R: rand::Rng>(modes: usize, rng: &mut R) -> DMatrix<f64> {
    let mut s = DMatrix::identity(2 * modes, 2 * modes);
    for _ in 0..(3 * modes) {
        let kind = rng.gen_range(0..3u8);
        let i = rng.gen_range(0..modes);
        let g = match kind {
            0 if modes > 1 => {
                let mut j = rng.gen_range(0..modes);
                while j == i {
                    j = rng.gen_range(0..modes);
                }
                beamsplitter_symplectic(modes, i, j, rng.gen_range(0.05..0.95))
            }
            1 => squeezer_symplectic(modes, i, rng.gen_range(-0.7..0.7)),
            _ => rotation_symplectic(modes, i, rng.gen_range(0.0..std::f64::consts::TAU)),
        };
        s = g * s;
    }
    s
}

/// A random physical zero-mean state: symplectic conjugation of a product of
/// thermal states.
pub fn random_state<R: rand::Rng>(modes: usize, rng: &mut R) -> GaussianState {
    let s = random_symplectic(modes, rng);
    let mut st = GaussianState::thermal(rng.gen_range(0.0..1.5)).expect("valid");
    for _ in 1..modes {
        st = st.tensor(&GaussianState::thermal(rng.gen_range(0.0..1.5)).expect("valid"));
    }
    st.conjugate_symplectic(&s).expect("symplectic conjugation")
}
