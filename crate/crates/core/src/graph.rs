//! Complex-weighted graphs, their Laplacians, and the structural predicates
//! (balance, connectivity, irreducibility) the certification relies on.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{Complex, ComplexMatrix, LinalgError};

/// Entrywise tolerance for the balance and symmetry predicates.
pub const STRUCTURE_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("edge {src}->{dst} references a vertex outside 0..{n}")]
    VertexOutOfRange { src: usize, dst: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {src}->{dst}")]
    DuplicateEdge { src: usize, dst: usize },
    #[error("edge {src}->{dst} has a non-finite weight")]
    NonFiniteWeight { src: usize, dst: usize },
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub weight: Complex,
}

impl Edge {
    pub fn new(src: usize, dst: usize, weight: Complex) -> Self {
        Self { src, dst, weight }
    }
}

/// A graph on vertices `0..n` with complex edge weights.
///
/// When `directed` is false every stored edge also stands for its reverse
/// with the same weight.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedDigraph {
    n: usize,
    edges: Vec<Edge>,
    directed: bool,
}

impl WeightedDigraph {
    pub fn new(n: usize, directed: bool, edges: Vec<Edge>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut seen = HashSet::new();
        for e in &edges {
            if e.src >= n || e.dst >= n {
                return Err(GraphError::VertexOutOfRange { src: e.src, dst: e.dst, n });
            }
            if e.src == e.dst {
                return Err(GraphError::SelfLoop(e.src));
            }
            if !(e.weight.re.is_finite() && e.weight.im.is_finite()) {
                return Err(GraphError::NonFiniteWeight { src: e.src, dst: e.dst });
            }
            let key = if directed {
                (e.src, e.dst)
            } else {
                (e.src.min(e.dst), e.src.max(e.dst))
            };
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge { src: e.src, dst: e.dst });
            }
        }
        Ok(Self { n, edges, directed })
    }

    pub fn directed(n: usize, edges: impl IntoIterator<Item = (usize, usize, Complex)>) -> Result<Self, GraphError> {
        Self::new(n, true, edges.into_iter().map(|(s, d, w)| Edge::new(s, d, w)).collect())
    }

    pub fn undirected(n: usize, edges: impl IntoIterator<Item = (usize, usize, Complex)>) -> Result<Self, GraphError> {
        Self::new(n, false, edges.into_iter().map(|(s, d, w)| Edge::new(s, d, w)).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Every directed arc, with undirected edges expanded into both directions.
    pub fn arcs(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().flat_map(move |e| {
            let rev = (!self.directed).then(|| Edge::new(e.dst, e.src, e.weight));
            std::iter::once(*e).chain(rev)
        })
    }

    pub fn adjacency(&self) -> ComplexMatrix {
        let mut a = ComplexMatrix::zeros(self.n, self.n);
        for arc in self.arcs() {
            a[(arc.src, arc.dst)] = arc.weight;
        }
        a
    }

    /// Successor lists of the support pattern (nonzero weights only).
    fn successors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for arc in self.arcs().filter(|a| a.weight != Complex::new(0.0, 0.0)) {
            out[arc.src].push(arc.dst);
        }
        out
    }

    /// Every weight has nonnegative real part.
    pub fn is_unsigned(&self) -> bool {
        self.edges.iter().all(|e| e.weight.re >= 0.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StructureFlags {
    pub undirected: bool,
    pub weight_balanced: bool,
    pub unsigned: bool,
    pub strongly_connected: bool,
    pub weakly_connected: bool,
}

/// Adjacency, degree matrices and Laplacian `L = D_out − A` of one graph.
#[derive(Clone, Debug)]
pub struct LaplacianBundle {
    adjacency: ComplexMatrix,
    out_degree: ComplexMatrix,
    in_degree: ComplexMatrix,
    laplacian: ComplexMatrix,
    flags: StructureFlags,
}

impl LaplacianBundle {
    pub fn adjacency(&self) -> &ComplexMatrix {
        &self.adjacency
    }

    pub fn out_degree(&self) -> &ComplexMatrix {
        &self.out_degree
    }

    pub fn in_degree(&self) -> &ComplexMatrix {
        &self.in_degree
    }

    pub fn laplacian(&self) -> &ComplexMatrix {
        &self.laplacian
    }

    pub fn flags(&self) -> StructureFlags {
        self.flags
    }

    pub fn dim(&self) -> usize {
        self.laplacian.rows()
    }
}

pub fn build_laplacian(g: &WeightedDigraph) -> LaplacianBundle {
    let n = g.vertex_count();
    let adjacency = g.adjacency();
    let ones = vec![Complex::new(1.0, 0.0); n];
    let out_degree = ComplexMatrix::from_diag(&adjacency.mul_vec(&ones));
    let in_degree = ComplexMatrix::from_diag(&adjacency.transpose().mul_vec(&ones));
    let laplacian = out_degree.sub(&adjacency);
    let undirected = adjacency.max_abs_diff(&adjacency.transpose()) <= STRUCTURE_TOL;
    let weight_balanced = degrees_balanced(&out_degree, &in_degree);
    let flags = StructureFlags {
        undirected,
        weight_balanced,
        unsigned: g.is_unsigned(),
        strongly_connected: is_strongly_connected(g),
        weakly_connected: is_weakly_connected(g),
    };
    LaplacianBundle {
        adjacency,
        out_degree,
        in_degree,
        laplacian,
        flags,
    }
}

fn degrees_balanced(out_degree: &ComplexMatrix, in_degree: &ComplexMatrix) -> bool {
    let scale = out_degree.max_abs().max(in_degree.max_abs()).max(1.0);
    out_degree.max_abs_diff(in_degree) <= STRUCTURE_TOL * scale
}

/// `D_out = D_in` entrywise.
pub fn is_weight_balanced(b: &LaplacianBundle) -> bool {
    degrees_balanced(&b.out_degree, &b.in_degree)
}

fn reachable_from(start: usize, succ: &[Vec<usize>]) -> Vec<bool> {
    let mut seen = vec![false; succ.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(u) = queue.pop_front() {
        for &v in &succ[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

fn transpose_lists(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut pred = vec![Vec::new(); succ.len()];
    for (u, vs) in succ.iter().enumerate() {
        for &v in vs {
            pred[v].push(u);
        }
    }
    pred
}

fn strongly_connected_lists(succ: &[Vec<usize>]) -> bool {
    reachable_from(0, succ).into_iter().all(|r| r)
        && reachable_from(0, &transpose_lists(succ)).into_iter().all(|r| r)
}

/// Directed paths exist between every ordered pair of vertices.
pub fn is_strongly_connected(g: &WeightedDigraph) -> bool {
    strongly_connected_lists(&g.successors())
}

/// The symmetrized support pattern is connected.
pub fn is_weakly_connected(g: &WeightedDigraph) -> bool {
    let succ = g.successors();
    let mut sym = transpose_lists(&succ);
    for (u, vs) in succ.into_iter().enumerate() {
        sym[u].extend(vs);
    }
    reachable_from(0, &sym).into_iter().all(|r| r)
}

fn require_min_dim(m: &ComplexMatrix) -> Result<usize, GraphError> {
    let n = m.ensure_square()?;
    if n < 2 {
        return Err(GraphError::Domain(format!("irreducibility is defined for n >= 2, got n = {n}")));
    }
    Ok(n)
}

/// Irreducibility through strong connectivity of the off-diagonal support
/// digraph (`i -> j` whenever `M[i][j] != 0`, `i != j`).
pub fn is_irreducible(m: &ComplexMatrix) -> Result<bool, GraphError> {
    let n = require_min_dim(m)?;
    let zero = Complex::new(0.0, 0.0);
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && m[(i, j)] != zero).collect())
        .collect();
    Ok(strongly_connected_lists(&succ))
}

/// Exhaustive search for a permutation `P` and split `r` making `PMPᵀ` block
/// upper triangular with an exactly zero lower-left block. Only for
/// `2 <= n <= 8`; serves as the reference for [`is_irreducible`].
pub fn irreducible_bruteforce(m: &ComplexMatrix) -> Result<bool, GraphError> {
    let n = require_min_dim(m)?;
    if n > 8 {
        return Err(GraphError::Domain(format!("exhaustive search supports n <= 8, got n = {n}")));
    }
    let zero = Complex::new(0.0, 0.0);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut reducible = false;
    for_each_permutation(&mut perm, 0, &mut |p| {
        for r in 1..n {
            let lower_left_zero = (r..n).all(|i| (0..r).all(|j| m[(p[i], p[j])] == zero));
            if lower_left_zero {
                reducible = true;
                return true;
            }
        }
        false
    });
    Ok(!reducible)
}

/// Visits every permutation of `p[k..]`; stops early once `visit` returns true.
fn for_each_permutation(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == p.len() {
        return visit(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if for_each_permutation(p, k + 1, visit) {
            p.swap(k, i);
            return true;
        }
        p.swap(k, i);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn example_graphs_reproduce_the_printed_laplacians() {
        assert_eq!(build_laplacian(&fixtures::example1_graph()).laplacian(), &fixtures::l1());
        assert_eq!(build_laplacian(&fixtures::example2_graph()).laplacian(), &fixtures::l2());
        assert_eq!(build_laplacian(&fixtures::counterexample_graph()).laplacian(), &fixtures::l3());
    }

    #[test]
    fn single_edge_laplacian() {
        let g = WeightedDigraph::directed(2, [(0, 1, c(1.0, 0.0))]).unwrap();
        let l = build_laplacian(&g);
        let want = ComplexMatrix::from_pairs([[(1.0, 0.0), (-1.0, 0.0)], [(0.0, 0.0), (0.0, 0.0)]]);
        assert_eq!(l.laplacian(), &want);
    }

    #[test]
    fn balance_flags() {
        assert!(is_weight_balanced(&build_laplacian(&fixtures::example2_graph())));
        assert!(is_weight_balanced(&build_laplacian(&fixtures::example1_graph())));
        // vertex 1 sends 2+i but receives nothing
        assert!(!is_weight_balanced(&build_laplacian(&fixtures::counterexample_graph())));
    }

    #[test]
    fn connectivity_predicates() {
        assert!(is_strongly_connected(&fixtures::example2_graph()));
        assert!(!is_strongly_connected(&fixtures::counterexample_graph()));
        assert!(is_weakly_connected(&fixtures::counterexample_graph()));
        let single = WeightedDigraph::directed(1, []).unwrap();
        assert!(is_strongly_connected(&single));
        let pair = WeightedDigraph::directed(2, []).unwrap();
        assert!(!is_weakly_connected(&pair));
    }

    #[test]
    fn zero_weight_edges_do_not_connect() {
        let g = WeightedDigraph::undirected(2, [(0, 1, c(0.0, 0.0))]).unwrap();
        assert!(!is_weakly_connected(&g));
    }

    #[test]
    fn irreducibility_on_fixtures() {
        assert!(is_irreducible(&fixtures::l2()).unwrap());
        assert!(irreducible_bruteforce(&fixtures::l2()).unwrap());
        assert!(!is_irreducible(&fixtures::l3()).unwrap());
        assert!(!irreducible_bruteforce(&fixtures::l3()).unwrap());
        let diag = ComplexMatrix::from_pairs([[(2.0, 1.0), (0.0, 0.0)], [(0.0, 0.0), (3.0, 0.0)]]);
        assert!(!is_irreducible(&diag).unwrap());
        let swap = ComplexMatrix::from_pairs([[(0.0, 0.0), (1.0, 0.0)], [(1.0, 0.0), (0.0, 0.0)]]);
        assert!(irreducible_bruteforce(&swap).unwrap());
    }

    #[test]
    fn irreducibility_domain_errors() {
        assert!(matches!(is_irreducible(&ComplexMatrix::identity(1)), Err(GraphError::Domain(_))));
        assert!(matches!(irreducible_bruteforce(&ComplexMatrix::identity(9)), Err(GraphError::Domain(_))));
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            WeightedDigraph::directed(2, [(0, 0, c(1.0, 0.0))]),
            Err(GraphError::SelfLoop(0))
        );
        assert!(matches!(
            WeightedDigraph::directed(2, [(0, 2, c(1.0, 0.0))]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            WeightedDigraph::undirected(3, [(0, 1, c(1.0, 0.0)), (1, 0, c(1.0, 0.0))]),
            Err(GraphError::DuplicateEdge { src: 1, dst: 0 })
        ));
        // the same pair in both directions is fine for a digraph
        assert!(WeightedDigraph::directed(2, [(0, 1, c(1.0, 0.0)), (1, 0, c(1.0, 0.0))]).is_ok());
    }
}
