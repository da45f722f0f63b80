use super::CertifyError;
use crate::linalg::{expm, ComplexMatrix, LinalgError};

/// Entries with real part at or below `POSITIVITY_TOL · max|m_ij|` count as
/// nonpositive, so rounding noise on structural zeros never reads as
/// positive.
pub const POSITIVITY_TOL: f64 = 1e-12;

pub fn real_part_positive(m: &ComplexMatrix) -> bool {
    let floor = POSITIVITY_TOL * m.max_abs();
    m.as_slice().iter().all(|z| z.re > floor)
}

/// Smallest `k₀ ≤ k_max` such that `Re(Mᵏ) > 0` for every `k` in
/// `k₀..=k_max`. Scan powers of a matrix normalized by its spectral radius
/// to keep them bounded.
pub fn is_real_eventually_positive(m: &ComplexMatrix, k_max: usize) -> Result<Option<usize>, CertifyError> {
    m.ensure_square()?;
    if k_max == 0 {
        return Err(CertifyError::Domain("k_max must be at least 1".into()));
    }
    let mut power = m.clone();
    let mut last_failure = 0;
    for k in 1..=k_max {
        if k > 1 {
            power = power.matmul(m);
        }
        if !power.is_finite() {
            return Err(LinalgError::Overflow("matrix powering").into());
        }
        if !real_part_positive(&power) {
            last_failure = k;
        }
    }
    Ok((last_failure < k_max).then_some(last_failure + 1))
}

/// Smallest grid time `t₀` such that `Re(e^{Mt}) > 0` at every grid point
/// `t ≥ t₀`. A sampled check only: it cannot see between or beyond the grid.
pub fn is_real_eep(m: &ComplexMatrix, t_grid: &[f64]) -> Result<Option<f64>, CertifyError> {
    m.ensure_square()?;
    if t_grid.is_empty() {
        return Err(CertifyError::Domain("time grid is empty".into()));
    }
    if t_grid.iter().any(|t| !(*t > 0.0 && t.is_finite())) || t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CertifyError::Domain("time grid must be positive and strictly ascending".into()));
    }
    let mut onset = None;
    for &t in t_grid.iter().rev() {
        if real_part_positive(&expm(&m.scale_real(t))?) {
            onset = Some(t);
        } else {
            break;
        }
    }
    Ok(onset)
}
