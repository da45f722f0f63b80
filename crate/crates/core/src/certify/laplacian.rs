use std::fmt;

use serde::Serialize;

use super::{
    check_class_p, choose_shift, is_real_eep, is_real_eventually_positive, real_part_positive, ClassPReport,
    CertifyError, ShiftRule, ZeroStructure,
};
use crate::flow::log_space;
use crate::graph::{LaplacianBundle, StructureFlags};
use crate::linalg::{eig, expm, Complex, ComplexMatrix, LinalgError};

/// Number of log-spaced sample times in the exponential positivity check.
pub const CERTIFY_GRID_POINTS: usize = 64;
/// Highest power of `B/ρ(B)` scanned for eventual real positivity.
pub const POWER_SCAN_LIMIT: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    RealEEP,
    NotRealEEP,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::RealEEP => "RealEEP",
            Verdict::NotRealEEP => "NotRealEEP",
            Verdict::Inconclusive => "Inconclusive",
        })
    }
}

/// Verdict on real eventual exponential positivity of `−L`, with the
/// evidence it rests on.
#[derive(Clone, Debug, Serialize)]
pub struct EEPCertificate {
    pub verdict: Verdict,
    /// Spectrum of `L`, sorted.
    pub eigenvalues: Vec<Complex>,
    /// `None` when no shift can dominate (some nonzero eigenvalue has
    /// `Re λ ≤ 0`).
    pub shift_d: Option<f64>,
    pub shift_rule: ShiftRule,
    pub zero_eigenvalue_simple: bool,
    pub zero_multiplicity: usize,
    pub others_in_open_right_half_plane: bool,
    /// Undirected, or strongly connected and weight-balanced.
    pub theorem_hypotheses: bool,
    pub flags: StructureFlags,
    /// Class-𝒫 report for `B = dI − L`, present whenever `shift_d` is.
    pub class_p: Option<ClassPReport>,
    pub power_onset_k0: Option<usize>,
    pub exponential_onset_t0: Option<f64>,
    pub symmetric_part_psd: bool,
    pub normal: bool,
    /// The sampled exponential check contradicted the spectral conditions.
    pub sampled_disagreement: bool,
    pub evidence_notes: Vec<String>,
}

impl EEPCertificate {
    pub fn is_real_eep(&self) -> bool {
        self.verdict == Verdict::RealEEP
    }
}

/// `certify_laplacian_with` under the default [`ShiftRule`].
pub fn certify_laplacian(b: &LaplacianBundle) -> Result<EEPCertificate, CertifyError> {
    certify_laplacian_with(b, ShiftRule::default())
}

pub fn certify_laplacian_with(b: &LaplacianBundle, rule: ShiftRule) -> Result<EEPCertificate, CertifyError> {
    let l = b.laplacian();
    let flags = b.flags();
    let spectrum = eig(l)?;
    let zero = ZeroStructure::of(&spectrum);
    let mut notes = Vec::new();

    let theorem_hypotheses = flags.undirected || (flags.strongly_connected && flags.weight_balanced);
    let spectral_ok = zero.is_simple() && zero.others_in_open_right_half_plane;

    let shift_d = match choose_shift(&spectrum.eigenvalues, rule) {
        Ok(d) => Some(d),
        Err(CertifyError::Domain(msg)) => {
            notes.push(format!("no admissible shift: {msg}"));
            None
        }
        Err(e) => return Err(e),
    };
    let (class_p, power_onset_k0) = match shift_d {
        Some(d) => {
            let shifted = l.scale_real(-1.0).shift_diagonal(Complex::new(d, 0.0));
            let report = check_class_p(&shifted)?;
            let rho = report.pf_of_m.dominant_eigenvalue.norm().max(d);
            let k0 = match is_real_eventually_positive(&shifted.scale_real(1.0 / rho), POWER_SCAN_LIMIT) {
                Ok(k0) => k0,
                Err(CertifyError::Linalg(LinalgError::Overflow(what))) => {
                    notes.push(format!("power scan overflowed in {what}"));
                    None
                }
                Err(e) => return Err(e),
            };
            if k0.is_none() {
                let mut note = format!("Re((B/ρ)^k) not positive for all k up to {POWER_SCAN_LIMIT}");
                if spectral_ok {
                    note.push_str(
                        "; with a near-minimal shift the subdominant ratio is close to 1 and the onset lies beyond \
                         the scan",
                    );
                }
                notes.push(note);
            }
            (Some(report), k0)
        }
        None => (None, None),
    };

    let grid = certify_grid(zero.min_positive_real_part);
    let minus_l = l.scale_real(-1.0);
    let exponential_onset_t0 = match is_real_eep(&minus_l, &grid) {
        Ok(t0) => t0,
        Err(CertifyError::Linalg(LinalgError::Overflow(what))) => {
            notes.push(format!("sampled exponential overflowed in {what}"));
            None
        }
        Err(e) => return Err(e),
    };
    let confirmed = match exponential_onset_t0 {
        Some(t0) => positive_at(&minus_l, t0)? && positive_at(&minus_l, 2.0 * t0)?,
        None => false,
    };

    let mut sampled_disagreement = false;
    let verdict = if zero.multiplicity() > 1 {
        notes.push(format!(
            "zero eigenvalue of L has multiplicity {}; e^(-Lt) keeps a nontrivial fixed subspace",
            zero.multiplicity()
        ));
        Verdict::NotRealEEP
    } else if zero.multiplicity() == 0 {
        notes.push("no eigenvalue of L in the zero cluster; not a Laplacian spectrum".into());
        Verdict::Inconclusive
    } else if !theorem_hypotheses {
        notes.push(
            "simple zero eigenvalue, but the graph is neither undirected nor strongly connected and \
             weight-balanced; no sufficient condition applies"
                .into(),
        );
        Verdict::Inconclusive
    } else if !spectral_ok {
        notes.push("a nonzero eigenvalue of L lies outside the open right half-plane".into());
        Verdict::Inconclusive
    } else if !confirmed {
        sampled_disagreement = true;
        notes.push("spectral conditions hold but the sampled exponential check did not confirm positivity".into());
        Verdict::Inconclusive
    } else {
        Verdict::RealEEP
    };

    if !theorem_hypotheses || !spectral_ok {
        match exponential_onset_t0 {
            Some(t0) => notes.push(format!("sampled Re(e^(-Lt)) > 0 on the grid from t = {t0:.6e}")),
            None => notes.push("sampled Re(e^(-Lt)) not positive at the last grid point".into()),
        }
    }
    if verdict == Verdict::RealEEP {
        if let Some(report) = &class_p {
            if !report.member {
                notes.push(format!(
                    "B = dI - L is not in class P for the {rule} shift; the verdict rests on the spectral conditions"
                ));
            }
        }
    }

    Ok(EEPCertificate {
        verdict,
        eigenvalues: spectrum.eigenvalues.clone(),
        shift_d,
        shift_rule: rule,
        zero_eigenvalue_simple: zero.is_simple(),
        zero_multiplicity: zero.multiplicity(),
        others_in_open_right_half_plane: zero.others_in_open_right_half_plane,
        theorem_hypotheses,
        flags,
        class_p,
        power_onset_k0,
        exponential_onset_t0,
        symmetric_part_psd: symmetric_part_psd(l)?,
        normal: is_normal(l),
        sampled_disagreement,
        evidence_notes: notes,
    })
}

fn certify_grid(min_positive_real_part: Option<f64>) -> Vec<f64> {
    match min_positive_real_part {
        Some(r) => log_space(1e-3 / r, 50.0 / r, CERTIFY_GRID_POINTS),
        None => log_space(1e-3, 10.0, CERTIFY_GRID_POINTS),
    }
}

fn positive_at(m: &ComplexMatrix, t: f64) -> Result<bool, CertifyError> {
    match expm(&m.scale_real(t)) {
        Ok(e) => Ok(real_part_positive(&e)),
        Err(LinalgError::Overflow(_)) => Ok(false),
        Err(e) => Err(e.into()),
    }
}

/// Whether the Hermitian part `(L + Lᴴ)/2` is positive semidefinite, with
/// tolerance `1e-9·‖L‖_F`.
pub fn symmetric_part_psd(l: &ComplexMatrix) -> Result<bool, CertifyError> {
    let hermitian = l.add(&l.conj_transpose()).scale_real(0.5);
    let tol = 1e-9 * l.frobenius_norm();
    let spectrum = eig(&hermitian)?;
    Ok(spectrum.eigenvalues.iter().all(|z| z.re >= -tol))
}

/// `‖LLᴴ − LᴴL‖_F ≤ 1e-9·max(1, ‖L‖²_F)`.
pub fn is_normal(l: &ComplexMatrix) -> bool {
    let lh = l.conj_transpose();
    let commutator = l.matmul(&lh).sub(&lh.matmul(l));
    commutator.frobenius_norm() <= 1e-9 * l.frobenius_norm().powi(2).max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{build_laplacian, WeightedDigraph};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn triangle_is_real_eep() {
        let cert = certify_laplacian(&build_laplacian(&fixtures::example1_graph())).unwrap();
        assert_eq!(cert.verdict, Verdict::RealEEP, "{cert:#?}");
        assert!(cert.zero_eigenvalue_simple);
        assert!(cert.symmetric_part_psd);
        assert!(cert.class_p.as_ref().unwrap().member);
        assert!(!cert.sampled_disagreement);
        let t0 = cert.exponential_onset_t0.unwrap();
        let minus_l = fixtures::l1().scale_real(-1.0);
        assert!(positive_at(&minus_l, t0).unwrap() && positive_at(&minus_l, 2.0 * t0).unwrap());
    }

    #[test]
    fn cycle_is_real_eep_under_both_rules() {
        let bundle = build_laplacian(&fixtures::example2_graph());
        let corrected = certify_laplacian(&bundle).unwrap();
        assert_eq!(corrected.verdict, Verdict::RealEEP);
        assert!(corrected.normal);
        assert!(corrected.symmetric_part_psd);
        let eq5 = certify_laplacian_with(&bundle, ShiftRule::PaperEq5).unwrap();
        assert_eq!(eq5.verdict, Verdict::RealEEP);
        assert_eq!(eq5.shift_rule, ShiftRule::PaperEq5);
        assert!(eq5.shift_d.unwrap() < corrected.shift_d.unwrap());
    }

    #[test]
    fn counterexample_is_not_real_eep() {
        let cert = certify_laplacian(&build_laplacian(&fixtures::counterexample_graph())).unwrap();
        assert_eq!(cert.verdict, Verdict::NotRealEEP);
        assert!(!cert.zero_eigenvalue_simple);
        assert_eq!(cert.zero_multiplicity, 2);
        assert_eq!(cert.exponential_onset_t0, None);
        assert!(!cert.class_p.unwrap().member);
    }

    #[test]
    fn high_phase_balanced_cycle_is_inconclusive() {
        let w = c(1.0, 2.0);
        let g = WeightedDigraph::directed(3, [(0, 1, w), (1, 2, w), (2, 0, w)]).unwrap();
        let cert = certify_laplacian(&build_laplacian(&g)).unwrap();
        assert!(cert.theorem_hypotheses);
        assert!(!cert.others_in_open_right_half_plane);
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        assert_eq!(cert.shift_d, None);
    }

    #[test]
    fn unbalanced_path_is_inconclusive() {
        let g = WeightedDigraph::directed(3, [(0, 1, c(1.0, 0.0)), (1, 2, c(1.0, 0.0))]).unwrap();
        let cert = certify_laplacian(&build_laplacian(&g)).unwrap();
        assert!(cert.zero_eigenvalue_simple);
        assert_eq!(cert.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn psd_and_normality() {
        assert!(symmetric_part_psd(&fixtures::l1()).unwrap());
        assert!(symmetric_part_psd(&fixtures::l2()).unwrap());
        assert!(!symmetric_part_psd(&ComplexMatrix::from_pairs([[(-1.0, 0.0)]])).unwrap());
        assert!(is_normal(&fixtures::l2()));
        assert!(!is_normal(&fixtures::l3()));
    }
}
