//! The bundled example networks: the undirected triangle, the directed
//! 3-cycle, the weakly connected counterexample, and a synthetic 12-bus
//! feeder, together with the numbers reported for them in the literature.

use crate::graph::WeightedDigraph;
use crate::io::{parse_branch_list, parse_edge_list, BranchDocument};
use crate::linalg::{Complex, ComplexMatrix};

pub const EX1_EDGES: &str = include_str!("../data/ex1.edges");
pub const EX2_EDGES: &str = include_str!("../data/ex2.edges");
pub const COUNTER_EDGES: &str = include_str!("../data/counter.edges");
pub const POWER12_BRANCHES: &str = include_str!("../data/power12.branches");

const fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// Laplacian of the undirected triangle.
pub fn l1() -> ComplexMatrix {
    ComplexMatrix::from_pairs([
        [(3.0, 1.5), (-2.0, -0.8), (-1.0, -0.7)],
        [(-2.0, -0.8), (5.0, 1.8), (-3.0, -1.0)],
        [(-1.0, -0.7), (-3.0, -1.0), (4.0, 1.7)],
    ])
}

/// Laplacian of the weight-balanced directed 3-cycle.
pub fn l2() -> ComplexMatrix {
    ComplexMatrix::from_pairs([
        [(1.0, 0.5), (0.0, 0.0), (-1.0, -0.5)],
        [(-1.0, -0.5), (1.0, 0.5), (0.0, 0.0)],
        [(0.0, 0.0), (-1.0, -0.5), (1.0, 0.5)],
    ])
}

/// Laplacian of the weakly connected counterexample.
pub fn l3() -> ComplexMatrix {
    ComplexMatrix::from_pairs([
        [(0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
        [(-1.0, -0.5), (2.0, 1.0), (-1.0, -0.5)],
        [(0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
    ])
}

pub fn example1_graph() -> WeightedDigraph {
    parse_edge_list(EX1_EDGES).expect("bundled ex1.edges is valid")
}

pub fn example2_graph() -> WeightedDigraph {
    parse_edge_list(EX2_EDGES).expect("bundled ex2.edges is valid")
}

pub fn counterexample_graph() -> WeightedDigraph {
    parse_edge_list(COUNTER_EDGES).expect("bundled counter.edges is valid")
}

pub fn power12_branches() -> BranchDocument {
    parse_branch_list(POWER12_BRANCHES).expect("bundled power12.branches is valid")
}

/// Initial agent states used for the three-node simulations.
pub const INITIAL_STATES: [Complex; 3] = [c(6.0, 2.0), c(2.0, -1.0), c(4.0, 0.7)];

/// Deterministic initial states for the 12-bus feeder.
pub fn power12_initial_states() -> Vec<Complex> {
    (0..12)
        .map(|k| {
            let t = k as f64;
            c(1.0 + 0.04 * t - 0.3 * (t * 0.7).sin(), 0.5 * (t * 1.3).cos() - 0.1)
        })
        .collect()
}

/// Reported spectrum of the triangle Laplacian (three significant figures).
pub const REPORTED_SPEC_L1: [Complex; 3] = [c(0.0, 0.0), c(4.26, 2.24), c(7.7, 2.7)];

/// Reported spectrum of the 3-cycle Laplacian.
pub const REPORTED_SPEC_L2: [Complex; 3] = [c(0.0, 0.0), c(1.06, 1.61), c(1.93, -0.11)];

/// Reported `e^{-L1}` at `t = 1`, two-decimal rounding.
pub const REPORTED_EXP_L1: [[Complex; 3]; 3] = [
    [c(0.33, 0.01), c(0.33, 0.002), c(0.34, 0.005)],
    [c(0.33, 0.002), c(0.33, -0.006), c(0.33, 0.001)],
    [c(0.34, 0.005), c(0.33, -0.001), c(0.33, -0.003)],
];

/// Reported `e^{-L2}` at `t = 1`.
pub const REPORTED_EXP_L2: [[Complex; 3]; 3] = [
    [c(0.38, 0.11), c(0.21, 0.1), c(0.42, 0.01)],
    [c(0.42, 0.01), c(0.38, -0.11), c(0.21, 0.1)],
    [c(0.21, 0.1), c(0.42, 0.01), c(0.38, -0.11)],
];

/// Shift reported as sufficient for the triangle: `d >= 4.5`.
pub const REPORTED_SHIFT_L1: f64 = 4.5;
