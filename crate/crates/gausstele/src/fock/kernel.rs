//! Per-diagonal transfer kernels for phase-insensitive channels.
//!
//! A phase-insensitive single-mode channel maps `|m⟩⟨m-d|` into the span of
//! `{|j⟩⟨j-d|}`, so its truncated action is a family of matrices `C_d` with
//! `out[j, j-d] = Σ_m C_d[j, m] · in[m, m-d]`. Kernels compose per diagonal
//! by matrix multiplication.
//!
//! The teleportation channel `ρ ↦ ∫ d²α G_σ̄(α) D(α) ρ D(-α)` is integrated
//! radially: with `u = |α|²` and `s = j - m = k - n`, its kernel entries are
//! `∫ du (e^{-u/σ̄}/σ̄) ⟨j|D|m⟩⟨k|D|n⟩` where the angular integral has already
//! enforced the diagonal constraint. Loss and amplification instead use their
//! exact banded Kraus operators, and the noisy families are the quantum-
//! limited compositions `amp(G') ∘ loss(η')`.

use nalgebra::DMatrix;

use super::ln_factorial;
use super::state::FockState;
use crate::quad::panel_rule;
use crate::{Error, Result};

/// Radial parts `⟨m+s|D(α)|m⟩ = √(m!/(m+s)!) u^{s/2} e^{-u/2} L_m^s(u)` for
/// `m = 0..=mmax` at `u = |α|²`, via a normalized three-term recurrence.
/// All values are bounded by 1.
pub(crate) fn displacement_radial(u: f64, s: usize, mmax: usize) -> Vec<f64> {
    let mut e = vec![0.0; mmax + 1];
    let log_e0 = if s == 0 {
        -0.5 * u
    } else {
        0.5 * (s as f64 * u.max(f64::MIN_POSITIVE).ln()) - 0.5 * u - 0.5 * ln_factorial(s)
    };
    e[0] = if u == 0.0 && s > 0 { 0.0 } else { log_e0.exp() };
    if mmax >= 1 {
        e[1] = (1.0 + s as f64 - u) * e[0] / ((1 + s) as f64).sqrt();
    }
    for m in 1..mmax {
        let mf = m as f64;
        let sf = s as f64;
        e[m + 1] = ((2.0 * mf + 1.0 + sf - u) * e[m] - (mf * (mf + sf)).sqrt() * e[m - 1])
            / (((mf + 1.0) * (mf + 1.0 + sf)).sqrt());
    }
    e
}

/// A truncated phase-insensitive channel as per-diagonal transfer matrices.
#[derive(Debug, Clone)]
pub struct NumberKernel {
    cutoff: usize,
    /// `diag[d][(j, m)]`, meaningful for `j, m ∈ [d, cutoff]`.
    diag: Vec<DMatrix<f64>>,
    label: String,
}

impl NumberKernel {
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The teleportation channel of variance `σ̄ > 0` by radial quadrature
    /// over displacement matrix elements.
    pub fn teleport(sigma: f64, cutoff: usize) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "teleportation variance must be > 0, got {sigma}"
            )));
        }
        let c = cutoff + 1;
        // the weight e^{-u/σ̄}/σ̄ bounds the integrand, so 40 decay lengths
        // leave a tail below 1e-17
        let (nodes, weights) = panel_rule(0.0, 40.0 * sigma, 32, 32);
        let wfull: Vec<f64> = nodes
            .iter()
            .zip(&weights)
            .map(|(u, w)| w * (-u / sigma).exp() / sigma)
            .collect();
        // Gram matrices per band offset s: G_s[p,q] = Σ_i W_i e_p(u_i) e_q(u_i);
        // kernel entries are C_d[j,m] = G_{|j-m|}[min(j,m), min(j,m)-d]
        let mut grams: Vec<DMatrix<f64>> = Vec::with_capacity(c);
        for s in 0..c {
            let mut table = DMatrix::zeros(c, nodes.len());
            for (i, &u) in nodes.iter().enumerate() {
                let col = displacement_radial(u, s, cutoff);
                for (m, v) in col.iter().enumerate() {
                    table[(m, i)] = *v;
                }
            }
            let mut weighted = table.clone();
            for (i, w) in wfull.iter().enumerate() {
                weighted.column_mut(i).scale_mut(*w);
            }
            grams.push(&weighted * table.transpose());
        }
        let mut diag = Vec::with_capacity(c);
        for d in 0..c {
            let mut cd = DMatrix::zeros(c, c);
            for j in d..c {
                for m in d..c {
                    let s = j.abs_diff(m);
                    let mn = j.min(m);
                    cd[(j, m)] = grams[s][(mn, mn - d)];
                }
            }
            diag.push(cd);
        }
        Ok(Self {
            cutoff,
            diag,
            label: format!("teleport(sigma={sigma})"),
        })
    }

    /// Quantum-limited loss of transmissivity `η ∈ (0, 1]`, from the Kraus
    /// operators `K_l = √((1-η)^l/l!) √η^(n̂) a^l`. Exactly trace preserving
    /// at any cutoff.
    pub fn pure_loss(eta: f64, cutoff: usize) -> Result<Self> {
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "loss transmissivity must lie in (0, 1], got {eta}"
            )));
        }
        let c = cutoff + 1;
        let mut diag = Vec::with_capacity(c);
        if eta == 1.0 {
            for _ in 0..c {
                diag.push(DMatrix::identity(c, c));
            }
            return Ok(Self {
                cutoff,
                diag,
                label: "loss(eta=1)".into(),
            });
        }
        let ln_eta = eta.ln();
        let ln_omt = (1.0 - eta).ln();
        // ⟨j|K_l|m⟩ = √(C(m,l)(1-η)^l η^(m-l)) at j = m - l
        let amp = |j: usize, m: usize| -> f64 {
            let l = m - j;
            (0.5 * (ln_factorial(m) - ln_factorial(l) - ln_factorial(j))
                + 0.5 * (l as f64 * ln_omt + j as f64 * ln_eta))
                .exp()
        };
        for d in 0..c {
            let mut cd = DMatrix::zeros(c, c);
            for j in d..c {
                for m in j..c {
                    cd[(j, m)] = amp(j, m) * amp(j - d, m - d);
                }
            }
            diag.push(cd);
        }
        Ok(Self {
            cutoff,
            diag,
            label: format!("loss(eta={eta})"),
        })
    }

    /// Quantum-limited amplifier of gain `G ≥ 1`, from the Kraus operators
    /// `A_l = √((1/G)(1-1/G)^l/l!) (a†)^l (1/G)^(n̂/2)`. Leaks trace above
    /// the cutoff; the leak is reported by [`NumberKernel::apply`].
    pub fn pure_amplifier(gain: f64, cutoff: usize) -> Result<Self> {
        if !(gain >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "amplifier gain must be ≥ 1, got {gain}"
            )));
        }
        let c = cutoff + 1;
        let mut diag = Vec::with_capacity(c);
        if gain == 1.0 {
            for _ in 0..c {
                diag.push(DMatrix::identity(c, c));
            }
            return Ok(Self {
                cutoff,
                diag,
                label: "amp(gain=1)".into(),
            });
        }
        let ln_g = gain.ln();
        let ln_omg = (1.0 - 1.0 / gain).ln();
        // ⟨j|A_l|m⟩ at j = m + l
        let amp = |j: usize, m: usize| -> f64 {
            let l = j - m;
            (0.5 * (ln_factorial(j) - ln_factorial(l) - ln_factorial(m))
                + 0.5 * (-ln_g + l as f64 * ln_omg - m as f64 * ln_g))
                .exp()
        };
        for d in 0..c {
            let mut cd = DMatrix::zeros(c, c);
            for j in d..c {
                for m in d..=j {
                    cd[(j, m)] = amp(j, m) * amp(j - d, m - d);
                }
            }
            diag.push(cd);
        }
        Ok(Self {
            cutoff,
            diag,
            label: format!("amp(gain={gain})"),
        })
    }

    /// Thermal channel `(η, N_B)` as the quantum-limited composition
    /// `amp(1 + (1-η)N_B) ∘ loss(η/G')`.
    pub fn thermal(eta: f64, n_b: f64, cutoff: usize) -> Result<Self> {
        if !(eta > 0.0 && eta < 1.0) || !(n_b >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "thermal kernel needs η ∈ (0,1), N_B ≥ 0; got ({eta}, {n_b})"
            )));
        }
        let g = 1.0 + (1.0 - eta) * n_b;
        let mut k = Self::compose(
            &Self::pure_amplifier(g, cutoff)?,
            &Self::pure_loss(eta / g, cutoff)?,
        )?;
        k.label = format!("thermal(eta={eta}, n_b={n_b})");
        Ok(k)
    }

    /// Amplifier channel `(G, N_B)` as `amp(G + N_B(G-1)) ∘ loss(G/G'')`.
    pub fn amplifier(gain: f64, n_b: f64, cutoff: usize) -> Result<Self> {
        if !(gain > 1.0) || !(n_b >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "amplifier kernel needs G > 1, N_B ≥ 0; got ({gain}, {n_b})"
            )));
        }
        let g2 = gain + n_b * (gain - 1.0);
        let mut k = Self::compose(
            &Self::pure_amplifier(g2, cutoff)?,
            &Self::pure_loss(gain / g2, cutoff)?,
        )?;
        k.label = format!("amplifier(gain={gain}, n_b={n_b})");
        Ok(k)
    }

    /// Serial composition `second ∘ first`: per-diagonal matrix products.
    pub fn compose(second: &NumberKernel, first: &NumberKernel) -> Result<Self> {
        if second.cutoff != first.cutoff {
            return Err(Error::DimensionMismatch(format!(
                "kernel cutoffs {} vs {}",
                second.cutoff, first.cutoff
            )));
        }
        let diag = second
            .diag
            .iter()
            .zip(&first.diag)
            .map(|(s, f)| s * f)
            .collect();
        Ok(Self {
            cutoff: second.cutoff,
            diag,
            label: format!("{} ∘ {}", second.label, first.label),
        })
    }

    /// Applies the kernel to `target_mode` of a state. Returns the output
    /// (renormalized) and the trace leaked past the cutoff.
    pub fn apply(&self, state: &FockState, target_mode: usize) -> Result<(FockState, f64)> {
        if state.cutoff() != self.cutoff {
            return Err(Error::DimensionMismatch(format!(
                "state cutoff {} vs kernel cutoff {}",
                state.cutoff(),
                self.cutoff
            )));
        }
        if target_mode >= state.modes() {
            return Err(Error::DimensionMismatch(format!(
                "target mode {target_mode} of {}",
                state.modes()
            )));
        }
        let c = self.cutoff + 1;
        let dim = state.dim();
        let spect = dim / c; // spectator dimension (1 for single mode)
                             // strides: flat index = a·sa + r·sr with a the target-mode index
        let (sa, sr) = if state.modes() == 1 {
            (1usize, 0usize)
        } else if target_mode == 1 {
            (1, c)
        } else {
            (c, 1)
        };
        let src = state.matrix();
        let mut out = DMatrix::<f64>::zeros(dim, dim);
        for d in 0..c {
            let nd = c - d;
            // gather: md[(m-d? m), col=(r,r')] = src[(r,m),(r', m-d)]
            let mut md = DMatrix::<f64>::zeros(nd, spect * spect);
            for r in 0..spect {
                for rp in 0..spect {
                    let col = r * spect + rp;
                    for (row, m) in (d..c).enumerate() {
                        let i = m * sa + r * sr;
                        let j = (m - d) * sa + rp * sr;
                        md[(row, col)] = src[(i, j)];
                    }
                }
            }
            let k = self.diag[d].view((d, d), (nd, nd));
            let res = k * md;
            for r in 0..spect {
                for rp in 0..spect {
                    let col = r * spect + rp;
                    for (row, j) in (d..c).enumerate() {
                        let i = j * sa + r * sr;
                        let jj = (j - d) * sa + rp * sr;
                        out[(i, jj)] = res[(row, col)];
                        if d > 0 {
                            out[(jj, i)] = res[(row, col)];
                        }
                    }
                }
            }
        }
        // d = 0 writes the main diagonal band once; enforce exact symmetry
        out = (&out + out.transpose()) * 0.5;
        let tr = out.trace();
        let leakage = 1.0 - tr;
        if tr <= 0.0 {
            return Err(Error::TruncationFloor(format!(
                "kernel output trace {tr} is not positive"
            )));
        }
        out /= tr;
        let st = FockState::new(
            state.modes(),
            self.cutoff,
            out,
            state.truncation_weight() * tr,
        )?;
        Ok((st, leakage))
    }
}

/// Teleportation-channel action on `target_mode` of a Fock state. Returns
/// the renormalized output and the trace leaked past the cutoff.
pub fn apply_teleport_channel_fock(
    state: &FockState,
    sigma: f64,
    target_mode: usize,
) -> Result<(FockState, f64)> {
    let kernel = NumberKernel::teleport(sigma, state.cutoff())?;
    kernel.apply(state, target_mode)
}
