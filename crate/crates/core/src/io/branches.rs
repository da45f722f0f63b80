//! Branch lists and the bus admittance matrix.
//!
//! ```text
//! buses <count>
//! <from> <to> <r> <x> <b>
//! ```
//!
//! Buses are 1-based. `r` and `x` are series resistance and reactance, `b`
//! the total line-charging susceptance of the Π model.

use std::collections::BTreeMap;

use super::{content_lines, parse_field, IoError};
use crate::graph::{Edge, WeightedDigraph};
use crate::linalg::{Complex, ComplexMatrix};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Branch {
    pub from: usize,
    pub to: usize,
    pub r: f64,
    pub x: f64,
    pub b: f64,
}

impl Branch {
    /// Series admittance `1 / (r + jx)`.
    pub fn series_admittance(&self) -> Result<Complex, IoError> {
        if self.r * self.r + self.x * self.x <= 0.0 {
            return Err(IoError::Branch {
                from: self.from,
                to: self.to,
                message: "zero series impedance".into(),
            });
        }
        Ok(Complex::new(self.r, self.x).inv())
    }

    /// Same branch without line charging.
    pub fn without_shunt(self) -> Self {
        Self { b: 0.0, ..self }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchDocument {
    pub n_bus: usize,
    pub branches: Vec<Branch>,
}

pub fn parse_branch_list(text: &str) -> Result<BranchDocument, IoError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| IoError::syntax(1, "missing `buses <n>` header"))?;
    let n_bus = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["buses", n] => parse_field::<usize>(hline, n, "bus count")?,
        _ => return Err(IoError::syntax(hline, "header must be `buses <n>`")),
    };
    if n_bus == 0 {
        return Err(IoError::syntax(hline, "bus count must be positive"));
    }
    let mut branches = Vec::new();
    for (line, record) in lines {
        let fields: Vec<&str> = record.split_whitespace().collect();
        let [f, t, r, x, b] = fields[..] else {
            return Err(IoError::syntax(line, format!("expected 5 fields, found {}", fields.len())));
        };
        let branch = Branch {
            from: parse_field(line, f, "from bus")?,
            to: parse_field(line, t, "to bus")?,
            r: parse_field(line, r, "resistance")?,
            x: parse_field(line, x, "reactance")?,
            b: parse_field(line, b, "susceptance")?,
        };
        check_branch(&branch, n_bus).map_err(|e| IoError::syntax(line, e.to_string()))?;
        branches.push(branch);
    }
    Ok(BranchDocument { n_bus, branches })
}

pub fn write_branch_list(doc: &BranchDocument) -> String {
    let mut out = format!("buses {}\n", doc.n_bus);
    for br in &doc.branches {
        out.push_str(&format!("{} {} {:?} {:?} {:?}\n", br.from, br.to, br.r, br.x, br.b));
    }
    out
}

fn check_branch(br: &Branch, n_bus: usize) -> Result<(), IoError> {
    let fail = |message: &str| IoError::Branch {
        from: br.from,
        to: br.to,
        message: message.into(),
    };
    if br.from == 0 || br.to == 0 || br.from > n_bus || br.to > n_bus {
        return Err(fail(&format!("bus index outside 1..={n_bus}")));
    }
    if br.from == br.to {
        return Err(fail("branch connects a bus to itself"));
    }
    if ![br.r, br.x, br.b].iter().all(|v| v.is_finite()) {
        return Err(fail("non-finite parameter"));
    }
    br.series_admittance().map(|_| ())
}

/// Π-model bus admittance matrix. Each branch adds its series admittance
/// `y` and half its charging `jb/2` to both end diagonals and subtracts `y`
/// from the two off-diagonal entries, so the result is complex symmetric.
pub fn ybus_from_branches(branches: &[Branch], n_bus: usize) -> Result<ComplexMatrix, IoError> {
    let mut y = ComplexMatrix::zeros(n_bus, n_bus);
    for br in branches {
        check_branch(br, n_bus)?;
        let ys = br.series_admittance()?;
        let shunt = Complex::new(0.0, br.b / 2.0);
        let (i, k) = (br.from - 1, br.to - 1);
        y[(i, i)] += ys + shunt;
        y[(k, k)] += ys + shunt;
        y[(i, k)] -= ys;
        y[(k, i)] -= ys;
    }
    Ok(y)
}

/// Undirected 0-based graph whose edge weights are the series admittances,
/// parallel branches merged. Its Laplacian is the shunt-free Y-bus.
pub fn feeder_graph(branches: &[Branch], n_bus: usize) -> Result<WeightedDigraph, IoError> {
    let mut merged: BTreeMap<(usize, usize), Complex> = BTreeMap::new();
    for br in branches {
        check_branch(br, n_bus)?;
        let key = ((br.from - 1).min(br.to - 1), (br.from - 1).max(br.to - 1));
        *merged.entry(key).or_default() += br.series_admittance()?;
    }
    let edges = merged.into_iter().map(|((i, k), w)| Edge::new(i, k, w)).collect();
    Ok(WeightedDigraph::new(n_bus, false, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::build_laplacian;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn lossless_line() {
        let br = Branch { from: 1, to: 2, r: 0.0, x: 1.0, b: 0.0 };
        let y = ybus_from_branches(&[br], 2).unwrap();
        assert_eq!(y, ComplexMatrix::from_pairs([[(0.0, -1.0), (0.0, 1.0)], [(0.0, 1.0), (0.0, -1.0)]]));
    }

    #[test]
    fn resistive_line() {
        let br = Branch { from: 1, to: 2, r: 1.0, x: 0.0, b: 0.0 };
        let y = ybus_from_branches(&[br], 2).unwrap();
        assert_eq!(y, ComplexMatrix::from_pairs([[(1.0, 0.0), (-1.0, 0.0)], [(-1.0, 0.0), (1.0, 0.0)]]));
    }

    #[test]
    fn zero_impedance_is_rejected() {
        let br = Branch { from: 1, to: 2, r: 0.0, x: 0.0, b: 0.1 };
        assert!(matches!(ybus_from_branches(&[br], 2), Err(IoError::Branch { .. })));
        assert!(parse_branch_list("buses 2\n1 2 0 0 0\n").is_err());
    }

    #[test]
    fn shunt_lands_on_diagonal() {
        let br = Branch { from: 1, to: 2, r: 1.0, x: 0.0, b: 0.4 };
        let y = ybus_from_branches(&[br], 2).unwrap();
        assert_eq!(y[(0, 0)], c(1.0, 0.2));
        assert_eq!(y[(0, 1)], c(-1.0, 0.0));
    }

    #[test]
    fn feeder_ybus_is_complex_symmetric_not_hermitian() {
        let doc = fixtures::power12_branches();
        assert_eq!(doc.n_bus, 12);
        let y = ybus_from_branches(&doc.branches, doc.n_bus).unwrap();
        assert_eq!(y, y.transpose());
        assert!(y.sub(&y.conj_transpose()).frobenius_norm() > 1.0);
    }

    #[test]
    fn feeder_graph_laplacian_is_shunt_free_ybus() {
        let doc = fixtures::power12_branches();
        let shunt_free: Vec<Branch> = doc.branches.iter().map(|b| b.without_shunt()).collect();
        let y0 = ybus_from_branches(&shunt_free, doc.n_bus).unwrap();
        let g = feeder_graph(&doc.branches, doc.n_bus).unwrap();
        assert!(build_laplacian(&g).laplacian().max_abs_diff(&y0) < 1e-12);
    }

    #[test]
    fn branch_document_round_trip() {
        let doc = fixtures::power12_branches();
        assert_eq!(parse_branch_list(&write_branch_list(&doc)).unwrap(), doc);
    }

    #[test]
    fn branch_parse_errors() {
        assert!(matches!(parse_branch_list("buses 2\n1 3 1 1 0\n"), Err(IoError::Syntax { line: 2, .. })));
        assert!(matches!(parse_branch_list("nodes 2\n"), Err(IoError::Syntax { line: 1, .. })));
        assert!(matches!(parse_branch_list("buses 2\n1 2 1 1\n"), Err(IoError::Syntax { line: 2, .. })));
    }
}
