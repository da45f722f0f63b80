//! Dense complex linear algebra: eigensystems, matrix exponential, powers.

mod eigen;
mod expm;
mod lu;
mod matrix;

pub use eigen::{
    eig, eigenvalues, geometric_multiplicity, normalize_phase, residual_bound, sort_eigenvalues,
    SpectralSummary,
};
pub use expm::{expm, expm_series_oracle, matpow};
pub use lu::rank;
pub use matrix::{vec_norm, ComplexMatrix};

use thiserror::Error;

pub type Complex = num_complex::Complex64;

/// Eigen-residual bound, relative to `‖M‖_F`.
pub const EIG_TOL: f64 = 1e-8;

/// Eigenvalues closer than `CLUSTER_TOL * max(1, ‖M‖_F)` count as one.
pub const CLUSTER_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix has no entries")]
    Empty,
    #[error("matrix contains NaN or infinite entries")]
    NonFinite,
    #[error("QR iteration stalled after {sweeps} sweeps: subdiagonal ({row},{col}) still {magnitude:e}")]
    NoConvergence {
        sweeps: usize,
        row: usize,
        col: usize,
        magnitude: f64,
    },
    #[error("exponential series not converged after {k_max} terms (last term norm {last_term_norm:e})")]
    SeriesNoConvergence { k_max: usize, last_term_norm: f64 },
    #[error("floating-point overflow in {0}")]
    Overflow(&'static str),
}
