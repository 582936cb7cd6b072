//! Gaussian bosonic channels as covariance-matrix algebra.
//!
//! Everything operates on real symmetric covariance matrices in the
//! interleaved quadrature ordering (x₁, p₁, x₂, p₂, …) with ħ = 1 and the
//! vacuum covariance equal to the identity. Entropies are reported in bits.
//!
//! The crate is organised around a few layers:
//!
//! * [`symplectic`] — the symplectic form, covariance validity, symplectic
//!   spectra and the Williamson normal form;
//! * [`states`] — Gaussian states and their entropic functionals;
//! * [`channels`] — Gaussian channels `γ ↦ XᵀγX + Y`, named families and
//!   Stinespring dilations;
//! * [`capacities`] — classical, quantum and entanglement-assisted capacity
//!   formulas and bounds;
//! * [`eof`] — Gaussian entanglement of formation and minimal output
//!   entropies;
//! * [`additivity`] — residual scans for superadditivity, convexity and
//!   output-entropy additivity;
//! * [`fock`] — an independent truncated-number-basis oracle used to
//!   cross-check the covariance-level computations;
//! * [`io`] — matrix-file and channel-JSON (de)serialisation for the CLI.

pub mod additivity;
pub mod capacities;
pub mod channels;
pub mod eof;
pub mod fock;
pub mod io;
pub mod optim;
pub mod states;
pub mod symplectic;

use thiserror::Error;

/// Default tolerance for semidefiniteness and symplecticity checks.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum GaussError {
    #[error("mode count must be at least 1")]
    ZeroModes,
    #[error("matrix must be square with even dimension, got {rows}x{cols}")]
    BadShape { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a valid covariance matrix: {0}")]
    InvalidCovariance(String),
    #[error("matrix is not symplectic (max deviation {0:.3e})")]
    NotSymplectic(f64),
    #[error("not a valid Gaussian channel: {0}")]
    InvalidChannel(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("invalid bipartition: {0}")]
    InvalidPartition(String),
    #[error("unsupported channel family for this operation: {0}")]
    UnsupportedFamily(String),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("Fock cutoff {cutoff} too small: trace deficit {deficit:.3e} exceeds budget {budget:.3e}")]
    CutoffTooSmall {
        cutoff: usize,
        deficit: f64,
        budget: f64,
    },
    #[error("unsupported oracle target: {0}")]
    UnsupportedTarget(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GaussError>;
