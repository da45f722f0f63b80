//! Matrix exponential and integer matrix powers.

use super::lu::Lu;
use super::{ComplexMatrix, LinalgError};

/// Coefficients of the degree-13 diagonal Padé approximant to `exp`.
const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// Largest 1-norm for which the unscaled degree-13 approximant meets
/// double-precision backward error.
const THETA_13: f64 = 5.371_920_351_148_152;

/// `e^M` by scaling and squaring with a [13/13] Padé approximant.
pub fn expm(m: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let n = m.ensure_square()?;
    if !m.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let norm = m.norm_1();
    let squarings = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as i32
    } else {
        0
    };
    let a = m.scale_real(0.5f64.powi(squarings));

    let id = ComplexMatrix::identity(n);
    let a2 = a.matmul(&a);
    let a4 = a2.matmul(&a2);
    let a6 = a4.matmul(&a2);
    let b = &PADE13;
    let lin = |x6: f64, x4: f64, x2: f64| -> ComplexMatrix {
        a6.scale_real(x6).add(&a4.scale_real(x4)).add(&a2.scale_real(x2))
    };

    let u_inner = a6.matmul(&lin(b[13], b[11], b[9])).add(&lin(b[7], b[5], b[3])).add(&id.scale_real(b[1]));
    let u = a.matmul(&u_inner);
    let v = a6.matmul(&lin(b[12], b[10], b[8])).add(&lin(b[6], b[4], b[2])).add(&id.scale_real(b[0]));

    let p = v.add(&u);
    let q = v.sub(&u);
    let mut r = Lu::new(&q, 0.0).solve_matrix(&p);
    if !r.is_finite() {
        return Err(LinalgError::Overflow("Padé solve"));
    }
    for _ in 0..squarings {
        r = r.matmul(&r);
        if !r.is_finite() {
            return Err(LinalgError::Overflow("squaring phase"));
        }
    }
    Ok(r)
}

/// Truncated Taylor series `Σ Mᵏ/k!`, summed until a term's Frobenius norm
/// drops below `1e-14`. Independent of [`expm`]; intended as a test oracle for
/// small, moderately sized matrices.
pub fn expm_series_oracle(m: &ComplexMatrix, k_max: usize) -> Result<ComplexMatrix, LinalgError> {
    let n = m.ensure_square()?;
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    if m.frobenius_norm() == 0.0 {
        return Ok(sum);
    }
    for k in 1..=k_max {
        term = term.matmul(m).scale_real(1.0 / k as f64);
        sum = sum.add(&term);
        let tn = term.frobenius_norm();
        if tn < 1e-14 {
            return Ok(sum);
        }
        if !tn.is_finite() {
            break;
        }
    }
    Err(LinalgError::SeriesNoConvergence {
        k_max,
        last_term_norm: term.frobenius_norm(),
    })
}

/// `Mᵏ` by binary exponentiation; `M⁰ = I`.
pub fn matpow(m: &ComplexMatrix, k: u64) -> Result<ComplexMatrix, LinalgError> {
    let n = m.ensure_square()?;
    let mut result = ComplexMatrix::identity(n);
    let mut base = m.clone();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result = result.matmul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.matmul(&base);
        }
    }
    Ok(result)
}
