//! Random instance generators and small independent oracles shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::Rng;
use realeep::graph::WeightedDigraph;
use realeep::{Complex, ComplexMatrix};

pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

pub fn random_complex(rng: &mut impl Rng, scale: f64) -> Complex {
    c(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

pub fn random_matrix(rng: &mut impl Rng, n: usize, scale: f64) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| random_complex(rng, scale))
}

/// Connected undirected graph: a random spanning tree plus extra edges.
/// Weights have `Re ∈ [0.5, 3]` and `Im ∈ [−3, 3]`.
pub fn random_connected_undirected(rng: &mut impl Rng, n: usize) -> WeightedDigraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = BTreeMap::new();
    for k in 1..n {
        let parent = order[rng.gen_range(0..k)];
        let key = (parent.min(order[k]), parent.max(order[k]));
        edges.insert(key, undirected_weight(rng));
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.3) {
                edges.entry((i, j)).or_insert_with(|| undirected_weight(rng));
            }
        }
    }
    WeightedDigraph::undirected(n, edges.into_iter().map(|((i, j), w)| (i, j, w))).unwrap()
}

fn undirected_weight(rng: &mut impl Rng) -> Complex {
    c(rng.gen_range(0.5..3.0), rng.gen_range(-3.0..3.0))
}

/// Strongly connected weight-balanced digraph: a Hamiltonian cycle plus a
/// few extra directed cycles, each cycle carrying one weight
/// `r·e^{iθ}` with `|θ| ≤ 0.8π/n`. Arcs shared by several cycles add up.
pub fn random_balanced_digraph(rng: &mut impl Rng, n: usize) -> WeightedDigraph {
    let mut arcs: BTreeMap<(usize, usize), Complex> = BTreeMap::new();
    let mut add_cycle = |rng: &mut _, cycle: &[usize]| {
        let w = cycle_weight(rng, n);
        for k in 0..cycle.len() {
            *arcs.entry((cycle[k], cycle[(k + 1) % cycle.len()])).or_default() += w;
        }
    };
    let mut ham: Vec<usize> = (0..n).collect();
    ham.shuffle(rng);
    add_cycle(rng, &ham);
    for _ in 0..rng.gen_range(0..=n) {
        let len = rng.gen_range(2..=n);
        let mut cycle: Vec<usize> = (0..n).collect();
        cycle.shuffle(rng);
        cycle.truncate(len);
        add_cycle(rng, &cycle);
    }
    WeightedDigraph::directed(n, arcs.into_iter().map(|((i, j), w)| (i, j, w))).unwrap()
}

fn cycle_weight(rng: &mut impl Rng, n: usize) -> Complex {
    let bound = 0.8 * PI / n as f64;
    Complex::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(-bound..bound))
}

/// Random support pattern with complex weights on the arcs kept.
pub fn random_support(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let p = rng.gen_range(0.1..0.6);
    ComplexMatrix::from_fn(n, n, |_, _| if rng.gen_bool(p) { random_complex(rng, 1.0) } else { c(0.0, 0.0) })
}

/// Gaussian elimination with partial pivoting, written independently of the
/// library's LU.
pub fn solve(a: &ComplexMatrix, b: &[Complex]) -> Vec<Complex> {
    let n = a.rows();
    let mut m: Vec<Vec<Complex>> = (0..n).map(|i| {
        let mut row = a.row(i).to_vec();
        row.push(b[i]);
        row
    }).collect();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm())).unwrap();
        m.swap(col, p);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for k in col..=n {
                let v = m[col][k];
                m[r][k] -= f * v;
            }
        }
    }
    let mut x = vec![c(0.0, 0.0); n];
    for i in (0..n).rev() {
        let s: Complex = (i + 1..n).map(|k| m[i][k] * x[k]).sum();
        x[i] = (m[i][n] - s) / m[i][i];
    }
    x
}

/// Left null vector `z` of `L` with `zᴴ𝟙 = 1`: solves `Lᴴz = 0` with the
/// last equation replaced by `Σ conj(z_j) = 1`, i.e. `Σ z_j = 1`.
pub fn left_null_vector(l: &ComplexMatrix) -> Vec<Complex> {
    let n = l.rows();
    let lh = l.conj_transpose();
    let a = ComplexMatrix::from_fn(n, n, |i, j| if i == n - 1 { c(1.0, 0.0) } else { lh[(i, j)] });
    let mut b = vec![c(0.0, 0.0); n];
    b[n - 1] = c(1.0, 0.0);
    solve(&a, &b)
}

/// Consensus value `zᴴx₀` from [`left_null_vector`].
pub fn consensus_oracle(l: &ComplexMatrix, x0: &[Complex]) -> Complex {
    left_null_vector(l).iter().zip(x0).map(|(z, x)| z.conj() * x).sum()
}

pub fn log_grid(start: f64, end: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| (start.ln() + (end.ln() - start.ln()) * k as f64 / (count - 1) as f64).exp())
        .collect()
}
