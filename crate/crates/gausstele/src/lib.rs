//! # gausstele
//!
//! A numerical toolkit for the teleportation simulation of bosonic Gaussian
//! channels. A Gaussian channel `G` can be realized from a shared two-mode
//! squeezed resource state and continuous-variable teleportation; with finite
//! squeezing and noisy detection the realized channel is `G ∘ T[σ̄]`, where
//! `T[σ̄]` is an additive-noise channel of variance `σ̄ > 0`. This crate
//! provides the machinery to study how (and how fast) `G ∘ T[σ̄] → G` as
//! `σ̄ → 0`:
//!
//! - [`symplectic`] — mean-vector/covariance-matrix states, the symplectic
//!   form, and Williamson decompositions;
//! - [`channel`] — `(X, Y, d)` Gaussian channels: named constructors,
//!   composition, dilations, displacement covariance;
//! - [`metric`] — fidelity, the sine distance `P = √(1−F)`, closed-form
//!   overlaps, and the multimode zero-mean Gaussian fidelity;
//! - [`fock`] — a truncated photon-number-basis oracle that brute-forces the
//!   same quantities with no Gaussian shortcuts;
//! - [`telesim`] — closed-form simulation maps and the uniform convergence
//!   bound evaluators;
//! - [`experiments`] — scripted sweeps contrasting strong (per-state) with
//!   uniform (worst-case) convergence, emitted as CSV;
//! - [`game`] — a Monte Carlo referee for the channel-discrimination game in
//!   which a Teleporter tries to pass simulated channels off as real ones;
//! - [`skc`] — secret-key-rate bound evaluators built on these simulations;
//! - [`verify`] — the acceptance checks wired into both `cargo test` and the
//!   `gausstele verify` subcommand.
//!
//! Quadrature ordering is `(q_1..q_m, p_1..p_m)` everywhere and the vacuum
//! covariance matrix is the identity. All types are immutable values and all
//! operations are pure functions.
//!
//! ## Examples
//!
//! Each capability has a runnable example (`cargo run --example <name>`):
//!
//! ```text
//! examples/
//! ├── channel_algebra.rs      # composition + dilation identities
//! ├── williamson.rs           # symplectic spectra
//! ├── strong_convergence.rs   # fixed-state infidelity sweeps
//! ├── uniform_divergence.rs   # worst case runs away for the identity
//! ├── uniform_bounds.rs       # closed-form bounds vs the Fock oracle
//! ├── multimode_bounds.rs     # two-mode environment-state bound
//! ├── fock_oracle.rs          # kernels vs covariance moments
//! ├── adaptive_protocols.rs   # telescoping over adaptive rounds
//! ├── teleportation_game.rs   # the three discrimination-game setups
//! ├── skc_bounds.rs           # key-rate tables
//! └── sweep_to_csv.rs         # the CSV contract, from code
//! ```
//!
//! The `gausstele` binary wraps the same machinery as batch subcommands
//! (`sweep`, `bounds`, `game`, `skc`, `verify`); see the crate README.

// parameter guards are written `!(x > 0.0)` so that NaN inputs are rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod cli;
pub mod experiments;
pub mod fock;
pub mod game;
pub mod metric;
pub mod quad;
pub mod skc;
pub mod symplectic;
pub mod telesim;
pub mod verify;

use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("covariance matrix is not physical: {0}")]
    UnphysicalCovariance(String),

    #[error("map is not completely positive: {0}")]
    InvalidChannel(String),

    #[error("unsupported channel family: {0}")]
    UnsupportedChannel(String),

    #[error("quadrature did not converge: {0}")]
    QuadratureFailure(String),

    #[error("truncated Fock representation below trust floor: {0}")]
    TruncationFloor(String),

    #[error("scenario file rejected: {0}")]
    Scenario(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
