//! Text formats: edge lists, complex matrix CSV, branch lists, trajectories.
//!
//! All formats are UTF-8 with LF line endings. `#` starts a comment in the
//! edge-list and branch-list formats.

mod branches;
mod complex;
mod edges;
mod matrix_csv;
mod trajectory;

pub use branches::{feeder_graph, parse_branch_list, write_branch_list, ybus_from_branches, Branch, BranchDocument};
pub use complex::{format_complex, parse_complex};
pub use edges::{parse_edge_list, write_edge_list};
pub use matrix_csv::{parse_matrix_csv, write_matrix_csv};
pub use trajectory::{parse_trajectory_csv, write_trajectory_csv, TrajectoryTable};

use thiserror::Error;

use crate::graph::GraphError;
use crate::linalg::LinalgError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: GraphError },
    #[error("branch {from}-{to}: {message}")]
    Branch { from: usize, to: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl IoError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        IoError::Syntax {
            line,
            message: message.into(),
        }
    }
}

/// Content lines with comments stripped, paired with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub(crate) fn parse_field<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T, IoError> {
    token
        .parse()
        .map_err(|_| IoError::syntax(line, format!("cannot parse {what} from {token:?}")))
}
