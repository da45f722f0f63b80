use super::{Complex, ComplexMatrix};

/// LU factorization with partial pivoting, `P A = L U`.
///
/// Pivots whose modulus falls below `pivot_floor` are replaced by
/// `pivot_floor`, which lets inverse iteration run on exactly singular
/// shifted matrices.
pub(crate) struct Lu {
    n: usize,
    lu: Vec<Complex>,
    perm: Vec<usize>,
}

impl Lu {
    pub(crate) fn new(a: &ComplexMatrix, pivot_floor: f64) -> Self {
        let n = a.rows();
        let mut lu = a.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, _) = (k..n)
                .map(|i| (i, lu[i * n + k].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            if lu[k * n + k].norm() < pivot_floor {
                lu[k * n + k] = Complex::new(pivot_floor, 0.0);
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                if factor == Complex::new(0.0, 0.0) {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[k * n + j];
                    lu[i * n + j] -= factor * u;
                }
            }
        }
        Self { n, lu, perm }
    }

    pub(crate) fn solve(&self, b: &[Complex]) -> Vec<Complex> {
        let n = self.n;
        let mut x: Vec<Complex> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s / self.lu[i * n + i];
        }
        x
    }

    pub(crate) fn solve_matrix(&self, b: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(b.rows(), b.cols());
        for j in 0..b.cols() {
            let col = self.solve(&b.column(j));
            out.set_column(j, &col);
        }
        out
    }
}

/// Numerical rank by Gaussian elimination with complete pivoting; entries
/// below `tol` are treated as zero.
pub fn rank(a: &ComplexMatrix, tol: f64) -> usize {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut r = 0;
    while r < rows.min(cols) {
        let mut best = (r, r, 0.0);
        for i in r..rows {
            for j in r..cols {
                let v = m[(i, j)].norm();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        if best.2 <= tol {
            break;
        }
        let (pi, pj, _) = best;
        for j in 0..cols {
            let t = m[(r, j)];
            m[(r, j)] = m[(pi, j)];
            m[(pi, j)] = t;
        }
        for i in 0..rows {
            let t = m[(i, r)];
            m[(i, r)] = m[(i, pj)];
            m[(i, pj)] = t;
        }
        let pivot = m[(r, r)];
        for i in r + 1..rows {
            let f = m[(i, r)] / pivot;
            for j in r..cols {
                let u = m[(r, j)];
                m[(i, j)] -= f * u;
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_recovers_known_solution() {
        let a = ComplexMatrix::from_pairs([
            [(0.0, 0.0), (2.0, 1.0), (1.0, 0.0)],
            [(1.0, -1.0), (0.0, 0.0), (3.0, 0.0)],
            [(4.0, 0.0), (1.0, 0.0), (0.0, 2.0)],
        ]);
        let x = vec![Complex::new(1.0, 2.0), Complex::new(-1.0, 0.5), Complex::new(0.0, -3.0)];
        let b = a.mul_vec(&x);
        let got = Lu::new(&a, 0.0).solve(&b);
        for (g, e) in got.iter().zip(&x) {
            assert!((g - e).norm() < 1e-13);
        }
    }

    #[test]
    fn rank_of_counterexample_laplacian_is_one() {
        let l3 = ComplexMatrix::from_pairs([
            [(0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
            [(-1.0, -0.5), (2.0, 1.0), (-1.0, -0.5)],
            [(0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
        ]);
        assert_eq!(rank(&l3, 1e-12), 1);
        assert_eq!(rank(&ComplexMatrix::identity(4), 1e-12), 4);
    }
}
