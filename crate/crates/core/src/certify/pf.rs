use serde::Serialize;

use super::CertifyError;
use crate::linalg::{eig, normalize_phase, Complex, ComplexMatrix, SpectralSummary, CLUSTER_TOL};

/// Margins behind each strong-PF condition; positive means satisfied.
#[derive(Clone, Debug, Serialize)]
pub struct PfMargins {
    /// `tol − |Im λ₁|`.
    pub imaginary_margin: f64,
    /// `Re λ₁ − tol`.
    pub real_margin: f64,
    /// `Re λ₁ − max_{i≥2} |λᵢ| − tol`; `+∞` for a 1x1 matrix.
    pub dominance_margin: f64,
    /// `min Re(x) − tol` after phase normalization.
    pub vector_margin: f64,
    /// Size of the eigenvalue cluster around `λ₁`.
    pub multiplicity: usize,
    pub tolerance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PFReport {
    pub holds: bool,
    pub dominant_eigenvalue: Complex,
    pub dominant_is_positive_real: bool,
    pub dominant_is_simple: bool,
    pub strictly_dominant_modulus: bool,
    pub right_vector_real_positive: bool,
    /// Dominant right eigenvector, largest entry rotated to positive real.
    pub right_vector: Vec<Complex>,
    pub details: PfMargins,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassPReport {
    pub pf_of_m: PFReport,
    pub pf_of_m_conjugate_transpose: PFReport,
    /// `Re(x) ≥ |Im(x)|` for the dominant right eigenvector of `M`.
    pub right_condition: bool,
    /// `Re(z) ≥ |Im(z)|` for the dominant left eigenvector of `M`.
    pub left_condition: bool,
    pub member: bool,
}

fn pf_from_spectrum(s: &SpectralSummary) -> PFReport {
    let lambda = s.eigenvalues[s.dominant_index];
    let cluster_tol = s.cluster_radius();
    let gap_tol = CLUSTER_TOL * lambda.norm().max(1.0);
    let multiplicity = s.multiplicity(s.dominant_index);

    let imaginary_margin = cluster_tol - lambda.im.abs();
    let real_margin = lambda.re - cluster_tol;
    let dominance_margin = s
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != s.dominant_index)
        .map(|(_, z)| lambda.re - z.norm() - gap_tol)
        .fold(f64::INFINITY, f64::min);
    let right_vector = normalize_phase(&s.right_vector(s.dominant_index));
    let vector_margin = right_vector.iter().map(|z| z.re).fold(f64::INFINITY, f64::min) - CLUSTER_TOL;

    let dominant_is_positive_real = imaginary_margin >= 0.0 && real_margin > 0.0;
    let dominant_is_simple = multiplicity == 1;
    let strictly_dominant_modulus = dominance_margin > 0.0;
    let right_vector_real_positive = vector_margin > 0.0;
    PFReport {
        holds: dominant_is_positive_real && dominant_is_simple && strictly_dominant_modulus && right_vector_real_positive,
        dominant_eigenvalue: lambda,
        dominant_is_positive_real,
        dominant_is_simple,
        strictly_dominant_modulus,
        right_vector_real_positive,
        right_vector,
        details: PfMargins {
            imaginary_margin,
            real_margin,
            dominance_margin,
            vector_margin,
            multiplicity,
            tolerance: cluster_tol,
        },
    }
}

/// Checks that the dominant eigenvalue is real, positive, simple and
/// strictly larger in modulus than every other eigenvalue, and that its
/// right eigenvector has entrywise positive real part.
pub fn check_strong_complex_pf(m: &ComplexMatrix) -> Result<PFReport, CertifyError> {
    Ok(pf_from_spectrum(&eig(m)?))
}

fn real_dominates_imag(v: &[Complex]) -> bool {
    v.iter().all(|z| z.re - z.im.abs() >= -CLUSTER_TOL)
}

/// Membership in the class of matrices whose dominant eigenvectors satisfy
/// `Re ≥ |Im|` and which, together with their conjugate transpose, have the
/// strong complex PF property.
///
/// The left-vector condition uses the left eigenvector from the eigensystem
/// of `M` itself; the PF report for `Mᴴ` comes from a separate
/// decomposition, so the two routes check each other.
pub fn check_class_p(m: &ComplexMatrix) -> Result<ClassPReport, CertifyError> {
    let spectrum = eig(m)?;
    let pf_of_m = pf_from_spectrum(&spectrum);
    let pf_of_m_conjugate_transpose = check_strong_complex_pf(&m.conj_transpose())?;
    let left = normalize_phase(&spectrum.left_vector(spectrum.dominant_index));
    let right_condition = real_dominates_imag(&pf_of_m.right_vector);
    let left_condition = real_dominates_imag(&left);
    let member = pf_of_m.holds && pf_of_m_conjugate_transpose.holds && right_condition && left_condition;
    Ok(ClassPReport {
        pf_of_m,
        pf_of_m_conjugate_transpose,
        right_condition,
        left_condition,
        member,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{choose_shift, ShiftRule};
    use crate::fixtures;

    fn shifted(l: &ComplexMatrix, d: f64) -> ComplexMatrix {
        l.scale_real(-1.0).shift_diagonal(Complex::new(d, 0.0))
    }

    #[test]
    fn symmetric_positive_matrix_has_pf() {
        let m = ComplexMatrix::from_pairs([[(2.0, 0.0), (1.0, 0.0)], [(1.0, 0.0), (2.0, 0.0)]]);
        let r = check_strong_complex_pf(&m).unwrap();
        assert!(r.holds);
        assert!((r.dominant_eigenvalue - Complex::new(3.0, 0.0)).norm() < 1e-12);
        let s = 0.5f64.sqrt();
        for z in &r.right_vector {
            assert!((z - Complex::new(s, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn modulus_tie_breaks_pf() {
        let m = ComplexMatrix::from_pairs([[(0.0, 0.0), (1.0, 0.0)], [(1.0, 0.0), (0.0, 0.0)]]);
        let r = check_strong_complex_pf(&m).unwrap();
        assert!(!r.holds);
        assert!(!r.strictly_dominant_modulus);
        assert!(r.dominant_is_simple);
    }

    #[test]
    fn shifted_cycle_has_pf_with_shift_as_dominant() {
        let l = fixtures::l2();
        let eigs = eig(&l).unwrap().eigenvalues;
        let d = choose_shift(&eigs, ShiftRule::CorrectedDominance).unwrap();
        let r = check_strong_complex_pf(&shifted(&l, d)).unwrap();
        assert!(r.holds, "{r:?}");
        assert!((r.dominant_eigenvalue - Complex::new(d, 0.0)).norm() < 1e-9);
        let s = (1.0f64 / 3.0).sqrt();
        for z in &r.right_vector {
            assert!((z - Complex::new(s, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn reported_shift_puts_triangle_in_class_p() {
        let r = check_class_p(&shifted(&fixtures::l1(), fixtures::REPORTED_SHIFT_L1)).unwrap();
        assert!(r.member, "{r:?}");
    }

    #[test]
    fn corrected_shift_puts_cycle_in_class_p() {
        let l = fixtures::l2();
        let d = choose_shift(&eig(&l).unwrap().eigenvalues, ShiftRule::CorrectedDominance).unwrap();
        assert!(check_class_p(&shifted(&l, d)).unwrap().member);
    }

    #[test]
    fn counterexample_is_never_in_class_p() {
        let l = fixtures::l3();
        let d = choose_shift(&eig(&l).unwrap().eigenvalues, ShiftRule::CorrectedDominance).unwrap();
        for shift in [d, 2.0 * d, 10.0] {
            let r = check_class_p(&shifted(&l, shift)).unwrap();
            assert!(!r.member);
            assert!(!r.pf_of_m.dominant_is_simple);
        }
    }
}
