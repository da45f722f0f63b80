//! Certification of real eventual exponential positivity.
//!
//! A matrix `M` is real EEP when `Re(e^{Mt})` is entrywise positive for all
//! sufficiently large `t`. For a Laplacian the question is asked of `−L`,
//! and the route to an answer goes through the shifted matrix `B = dI − L`:
//! when `B` and `Bᴴ` both have a real, simple, strictly dominant eigenvalue
//! whose eigenvectors satisfy `Re(v) ≥ |Im(v)|`, powers of `B` become
//! eventually real-positive and so does `e^{−Lt}`.

mod laplacian;
mod pf;
mod positivity;
mod shift;

pub use laplacian::{
    certify_laplacian, certify_laplacian_with, is_normal, symmetric_part_psd, EEPCertificate, Verdict,
    CERTIFY_GRID_POINTS, POWER_SCAN_LIMIT,
};
pub use pf::{check_class_p, check_strong_complex_pf, ClassPReport, PFReport, PfMargins};
pub use positivity::{is_real_eep, is_real_eventually_positive, real_part_positive, POSITIVITY_TOL};
pub use shift::{choose_shift, shift_margin, ShiftRule};

use thiserror::Error;

use crate::linalg::{LinalgError, SpectralSummary};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifyError {
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// How the zero eigenvalue of a Laplacian sits in its spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroStructure {
    /// Indices (into the sorted spectrum) of eigenvalues in the zero cluster.
    pub indices: Vec<usize>,
    /// Every eigenvalue outside the zero cluster has `Re λ` above the cluster
    /// radius.
    pub others_in_open_right_half_plane: bool,
    /// Smallest real part among eigenvalues with `Re λ` above the radius.
    pub min_positive_real_part: Option<f64>,
}

impl ZeroStructure {
    pub fn of(spectrum: &SpectralSummary) -> Self {
        let radius = spectrum.cluster_radius();
        let indices: Vec<usize> = (0..spectrum.len())
            .filter(|&i| spectrum.eigenvalues[i].norm() <= radius)
            .collect();
        let others: Vec<_> = (0..spectrum.len())
            .filter(|i| !indices.contains(i))
            .map(|i| spectrum.eigenvalues[i])
            .collect();
        let others_in_open_right_half_plane = others.iter().all(|z| z.re > radius);
        let min_positive_real_part = others
            .iter()
            .filter(|z| z.re > radius)
            .map(|z| z.re)
            .min_by(f64::total_cmp);
        Self {
            indices,
            others_in_open_right_half_plane,
            min_positive_real_part,
        }
    }

    pub fn multiplicity(&self) -> usize {
        self.indices.len()
    }

    pub fn is_simple(&self) -> bool {
        self.indices.len() == 1
    }
}
