//! Edge-list documents.
//!
//! ```text
//! # comment
//! <vertex count> <directed|undirected>
//! <src> <dst> <re_weight> <im_weight>
//! ...
//! ```
//!
//! Vertices are 0-based. In an undirected document each record stands for
//! both directions.

use std::collections::HashSet;

use super::{content_lines, parse_field, IoError};
use crate::graph::{Edge, GraphError, WeightedDigraph};
use crate::linalg::Complex;

pub fn parse_edge_list(text: &str) -> Result<WeightedDigraph, IoError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| IoError::syntax(1, "missing header line"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [count, kind] = fields[..] else {
        return Err(IoError::syntax(hline, "header must be `<vertex count> <directed|undirected>`"));
    };
    let n: usize = parse_field(hline, count, "vertex count")?;
    if n == 0 {
        return Err(IoError::Invalid {
            line: hline,
            source: GraphError::NoVertices,
        });
    }
    let directed = match kind {
        "directed" => true,
        "undirected" => false,
        other => return Err(IoError::syntax(hline, format!("unknown graph kind {other:?}"))),
    };

    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (line, record) in lines {
        let fields: Vec<&str> = record.split_whitespace().collect();
        let [s, d, re, im] = fields[..] else {
            return Err(IoError::syntax(line, format!("expected 4 fields, found {}", fields.len())));
        };
        let src: usize = parse_field(line, s, "source vertex")?;
        let dst: usize = parse_field(line, d, "target vertex")?;
        let re: f64 = parse_field(line, re, "real weight")?;
        let im: f64 = parse_field(line, im, "imaginary weight")?;
        let invalid = |source| IoError::Invalid { line, source };
        if src >= n || dst >= n {
            return Err(invalid(GraphError::VertexOutOfRange { src, dst, n }));
        }
        if src == dst {
            return Err(invalid(GraphError::SelfLoop(src)));
        }
        if !(re.is_finite() && im.is_finite()) {
            return Err(invalid(GraphError::NonFiniteWeight { src, dst }));
        }
        let key = if directed { (src, dst) } else { (src.min(dst), src.max(dst)) };
        if !seen.insert(key) {
            return Err(invalid(GraphError::DuplicateEdge { src, dst }));
        }
        edges.push(Edge::new(src, dst, Complex::new(re, im)));
    }
    Ok(WeightedDigraph::new(n, directed, edges)?)
}

pub fn write_edge_list(g: &WeightedDigraph) -> String {
    let kind = if g.is_directed() { "directed" } else { "undirected" };
    let mut out = format!("{} {kind}\n", g.vertex_count());
    for e in g.edges() {
        out.push_str(&format!("{} {} {:?} {:?}\n", e.src, e.dst, e.weight.re, e.weight.im));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::build_laplacian;
    use proptest::prelude::*;

    #[test]
    fn triangle_document_gives_the_triangle_laplacian() {
        let g = parse_edge_list(fixtures::EX1_EDGES).unwrap();
        assert!(!g.is_directed());
        assert_eq!(build_laplacian(&g).laplacian(), &fixtures::l1());
    }

    #[test]
    fn empty_edge_section() {
        let g = parse_edge_list("2 directed\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert!(g.edges().is_empty());
    }

    #[test]
    fn out_of_range_vertex_names_the_line() {
        let err = parse_edge_list("# header follows\n3 directed\n0 1 1 0\n3 0 1 0\n").unwrap_err();
        assert!(matches!(err, IoError::Invalid { line: 4, source: GraphError::VertexOutOfRange { .. } }));
        assert!(err.to_string().starts_with("line 4"));
    }

    #[test]
    fn malformed_and_duplicate_records() {
        assert!(matches!(parse_edge_list("2 directed\n0 1 x 0\n"), Err(IoError::Syntax { line: 2, .. })));
        assert!(matches!(parse_edge_list("2 directed\n0 1 1\n"), Err(IoError::Syntax { line: 2, .. })));
        assert!(matches!(parse_edge_list("2 sideways\n"), Err(IoError::Syntax { line: 1, .. })));
        assert!(matches!(parse_edge_list(""), Err(IoError::Syntax { .. })));
        let dup = parse_edge_list("2 undirected\n0 1 1 0\n1 0 2 0\n").unwrap_err();
        assert!(matches!(dup, IoError::Invalid { line: 3, source: GraphError::DuplicateEdge { .. } }));
    }

    fn arb_graph() -> impl Strategy<Value = WeightedDigraph> {
        (1usize..7, any::<bool>()).prop_flat_map(|(n, directed)| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| if directed { i != j } else { i < j })
                .collect();
            let m = pairs.len();
            (
                Just(n),
                Just(directed),
                Just(pairs),
                proptest::collection::vec((any::<bool>(), -5.0f64..5.0, -5.0f64..5.0), m),
            )
                .prop_map(|(n, directed, pairs, picks)| {
                    let edges = pairs
                        .into_iter()
                        .zip(picks)
                        .filter(|(_, (keep, _, _))| *keep)
                        .map(|((s, d), (_, re, im))| Edge::new(s, d, Complex::new(re, im)))
                        .collect();
                    WeightedDigraph::new(n, directed, edges).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn write_then_parse_is_identity(g in arb_graph()) {
            prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        }
    }
}
