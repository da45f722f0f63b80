//! Eigendecomposition of dense complex matrices.
//!
//! Eigenvalues come from a Householder reduction to upper Hessenberg form
//! followed by single-shift complex QR sweeps (Wilkinson shift, Givens
//! rotations). Right and left eigenvectors are then recovered by inverse
//! iteration on `M - λI` and `Mᴴ - conj(λ)I`.

use serde::Serialize;

use super::lu::{rank, Lu};
use super::matrix::vec_norm;
use super::{Complex, ComplexMatrix, LinalgError, CLUSTER_TOL, EIG_TOL};

/// Full eigensystem of a square complex matrix.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralSummary {
    /// Sorted by descending modulus, then descending real part, then
    /// descending imaginary part.
    pub eigenvalues: Vec<Complex>,
    /// Columns are unit-norm right eigenvectors, phase-fixed.
    #[serde(skip)]
    pub right_vectors: ComplexMatrix,
    /// Columns are unit-norm left eigenvectors `z` with `zᴴM = λzᴴ`.
    #[serde(skip)]
    pub left_vectors: ComplexMatrix,
    pub dominant_index: usize,
    /// `‖Mx − λx‖₂` for each pair.
    pub residuals: Vec<f64>,
    /// `‖zᴴM − λzᴴ‖₂` for each pair.
    pub left_residuals: Vec<f64>,
    /// Frobenius norm of the input, the scale for every tolerance.
    pub matrix_norm: f64,
}

impl SpectralSummary {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn right_vector(&self, i: usize) -> Vec<Complex> {
        self.right_vectors.column(i)
    }

    pub fn left_vector(&self, i: usize) -> Vec<Complex> {
        self.left_vectors.column(i)
    }

    /// Absolute distance under which two eigenvalues are one cluster.
    pub fn cluster_radius(&self) -> f64 {
        CLUSTER_TOL * self.matrix_norm.max(1.0)
    }

    /// Indices of all eigenvalues within the cluster radius of `target`.
    pub fn cluster_of(&self, target: Complex) -> Vec<usize> {
        let r = self.cluster_radius();
        (0..self.len())
            .filter(|&i| (self.eigenvalues[i] - target).norm() <= r)
            .collect()
    }

    /// Algebraic multiplicity of the eigenvalue at `index` by clustering.
    pub fn multiplicity(&self, index: usize) -> usize {
        self.cluster_of(self.eigenvalues[index]).len()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals
            .iter()
            .chain(&self.left_residuals)
            .copied()
            .fold(0.0, f64::max)
    }
}

/// Sorts eigenvalues by descending modulus, then descending real part, then
/// descending imaginary part. Moduli are compared on a grid of
/// `1e-10 * max(1, scale)` so rounding noise cannot reorder exact ties.
pub fn sort_eigenvalues(values: &mut [Complex], scale: f64) {
    let grid = 1e-10 * scale.max(1.0);
    let key = |z: &Complex| (z.norm() / grid).round();
    values.sort_by(|a, b| {
        key(b)
            .total_cmp(&key(a))
            .then(b.re.total_cmp(&a.re))
            .then(b.im.total_cmp(&a.im))
    });
}

/// Rotates `v` so its largest-modulus entry is positive real and scales it to
/// unit 2-norm. Ties on the largest modulus go to the first index.
pub fn normalize_phase(v: &[Complex]) -> Vec<Complex> {
    let norm = vec_norm(v);
    if norm == 0.0 {
        return v.to_vec();
    }
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let pivot = v
        .iter()
        .find(|z| z.norm() >= max * (1.0 - 1e-12))
        .copied()
        .unwrap_or(Complex::new(1.0, 0.0));
    let rot = pivot.conj() / pivot.norm() / norm;
    v.iter().map(|z| z * rot).collect()
}

/// Computes the full eigensystem of `m`.
pub fn eig(m: &ComplexMatrix) -> Result<SpectralSummary, LinalgError> {
    let n = m.ensure_square()?;
    if n == 0 {
        return Err(LinalgError::Empty);
    }
    if !m.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let mut eigenvalues = eigenvalues(m)?;
    sort_eigenvalues(&mut eigenvalues, m.frobenius_norm());

    let mh = m.conj_transpose();
    let mut right_vectors = ComplexMatrix::zeros(n, n);
    let mut left_vectors = ComplexMatrix::zeros(n, n);
    let mut residuals = Vec::with_capacity(n);
    let mut left_residuals = Vec::with_capacity(n);
    for (i, &lambda) in eigenvalues.iter().enumerate() {
        let (x, rx) = inverse_iteration(m, lambda);
        let (z, rz) = inverse_iteration(&mh, lambda.conj());
        right_vectors.set_column(i, &x);
        left_vectors.set_column(i, &z);
        residuals.push(rx);
        left_residuals.push(rz);
    }
    Ok(SpectralSummary {
        eigenvalues,
        right_vectors,
        left_vectors,
        dominant_index: 0,
        residuals,
        left_residuals,
        matrix_norm: m.frobenius_norm(),
    })
}

/// Eigenvalues only, in the order the QR sweeps deflate them.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex>, LinalgError> {
    let n = m.ensure_square()?;
    let mut h = m.clone();
    reduce_to_hessenberg(&mut h);
    hessenberg_qr(&mut h, n, 100 * n.max(1))
}

/// Geometric multiplicity of `lambda` as `n − rank(M − λI)`.
pub fn geometric_multiplicity(m: &ComplexMatrix, lambda: Complex) -> Result<usize, LinalgError> {
    let n = m.ensure_square()?;
    let shifted = m.shift_diagonal(-lambda);
    let tol = CLUSTER_TOL * m.frobenius_norm().max(1.0);
    Ok(n - rank(&shifted, tol))
}

fn reduce_to_hessenberg(a: &mut ComplexMatrix) {
    let n = a.rows();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex> = (k + 1..n).map(|i| a[(i, k)]).collect();
        let xnorm = vec_norm(&x);
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            Complex::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let mut v = x;
        v[0] += phase * xnorm;
        let vnorm = vec_norm(&v);
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // A <- (I - 2vvᴴ) A
        for j in 0..n {
            let s: Complex = v.iter().enumerate().map(|(r, vr)| vr.conj() * a[(k + 1 + r, j)]).sum();
            for (r, vr) in v.iter().enumerate() {
                a[(k + 1 + r, j)] -= 2.0 * vr * s;
            }
        }
        // A <- A (I - 2vvᴴ)
        for i in 0..n {
            let s: Complex = v.iter().enumerate().map(|(c, vc)| a[(i, k + 1 + c)] * vc).sum();
            for (c, vc) in v.iter().enumerate() {
                a[(i, k + 1 + c)] -= 2.0 * s * vc.conj();
            }
        }
        for i in k + 2..n {
            a[(i, k)] = Complex::new(0.0, 0.0);
        }
    }
}

/// Givens rotation `[[c, s], [-conj(s), c]]` mapping `(x, y)` to `(r, 0)`.
fn givens(x: Complex, y: Complex) -> (f64, Complex) {
    let ax = x.norm();
    let norm = ax.hypot(y.norm());
    if norm == 0.0 {
        return (1.0, Complex::new(0.0, 0.0));
    }
    if ax == 0.0 {
        return (0.0, Complex::new(1.0, 0.0));
    }
    let alpha = x / ax;
    (ax / norm, alpha * y.conj() / norm)
}

fn hessenberg_qr(h: &mut ComplexMatrix, n: usize, max_sweeps: usize) -> Result<Vec<Complex>, LinalgError> {
    let zero = Complex::new(0.0, 0.0);
    let mut eig = vec![zero; n];
    if n == 1 {
        eig[0] = h[(0, 0)];
        return Ok(eig);
    }
    let hnorm = h.frobenius_norm();
    let mut hi = n - 1;
    let mut sweeps = 0usize;
    let mut since_deflation = 0usize;
    loop {
        // locate the start of the unreduced block ending at hi
        let mut lo = hi;
        while lo > 0 {
            let mut s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if s == 0.0 {
                s = hnorm;
            }
            if h[(lo, lo - 1)].norm() <= f64::EPSILON * s {
                h[(lo, lo - 1)] = zero;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[(hi, hi)];
            since_deflation = 0;
            if hi == 0 {
                break;
            }
            hi -= 1;
            continue;
        }
        if sweeps >= max_sweeps {
            return Err(LinalgError::NoConvergence {
                sweeps,
                row: hi,
                col: hi - 1,
                magnitude: h[(hi, hi - 1)].norm(),
            });
        }
        sweeps += 1;
        since_deflation += 1;

        let shift = if since_deflation.is_multiple_of(11) {
            // exceptional shift to break cycles
            h[(hi, hi)] + Complex::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        for i in lo..=hi {
            h[(i, i)] -= shift;
        }
        let mut rotations = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..=hi {
                let t1 = h[(k, j)];
                let t2 = h[(k + 1, j)];
                h[(k, j)] = c * t1 + s * t2;
                h[(k + 1, j)] = -s.conj() * t1 + c * t2;
            }
            rotations.push((c, s));
        }
        for (offset, &(c, s)) in rotations.iter().enumerate() {
            let k = lo + offset;
            for i in lo..=(k + 1).min(hi) {
                let t1 = h[(i, k)];
                let t2 = h[(i, k + 1)];
                h[(i, k)] = t1 * c + t2 * s.conj();
                h[(i, k + 1)] = -t1 * s + t2 * c;
            }
        }
        for i in lo..=hi {
            h[(i, i)] += shift;
        }
    }
    Ok(eig)
}

/// Eigenvalue of the trailing 2x2 block closest to its last diagonal entry.
fn wilkinson_shift(a: Complex, b: Complex, c: Complex, d: Complex) -> Complex {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let mu1 = mid + disc;
    let mu2 = mid - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// Inverse iteration for an eigenvector of `m` at the approximate eigenvalue
/// `lambda`. Returns the phase-normalized unit vector and its residual.
fn inverse_iteration(m: &ComplexMatrix, lambda: Complex) -> (Vec<Complex>, f64) {
    let n = m.rows();
    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);
    let lu = Lu::new(&m.shift_diagonal(-lambda), f64::EPSILON * scale);
    let mut x: Vec<Complex> = (0..n)
        .map(|i| {
            let t = i as f64;
            Complex::new(1.0 + (0.618_033_988_75 * t).fract(), 0.25 * (0.414_213_562_37 * t).fract())
        })
        .collect();
    let mut best = (x.clone(), f64::INFINITY);
    for _ in 0..8 {
        let y = lu.solve(&x);
        let norm = vec_norm(&y);
        if !norm.is_finite() || norm == 0.0 {
            break;
        }
        x = normalize_phase(&y);
        let r = residual(m, lambda, &x);
        if r < best.1 {
            best = (x.clone(), r);
        }
        if r <= f64::EPSILON * scale * n as f64 {
            break;
        }
    }
    if !best.1.is_finite() {
        let v = normalize_phase(&x);
        let r = residual(m, lambda, &v);
        best = (v, r);
    }
    best
}

fn residual(m: &ComplexMatrix, lambda: Complex, x: &[Complex]) -> f64 {
    let mx = m.mul_vec(x);
    let diff: Vec<Complex> = mx.iter().zip(x).map(|(a, b)| a - lambda * b).collect();
    vec_norm(&diff)
}

/// Residual bound the eigensolver guarantees relative to `‖M‖_F`.
pub fn residual_bound(matrix_norm: f64) -> f64 {
    EIG_TOL * matrix_norm
}
