//! Real eventual exponential positivity (real EEP) of complex-weighted graph
//! Laplacians.
//!
//! A complex matrix `M` is real EEP when `Re(e^{Mt})` is entrywise positive
//! for every `t` past some onset. For the negated Laplacian `−L` of a
//! complex-weighted network this is what drives the flow `ẋ = −Lx` to
//! consensus from every initial state. The crate builds Laplacians from
//! weighted digraphs ([`graph`]), decides real EEP through shifted matrices
//! with the strong complex Perron-Frobenius property ([`certify`]), and
//! simulates the flow ([`flow`]). Dense complex linear algebra lives in
//! [`linalg`]; file formats in [`io`]; the command-line front end in [`cli`].
//!
//! ```
//! use realeep::{certify::{certify_laplacian, Verdict}, fixtures, graph::build_laplacian};
//!
//! let bundle = build_laplacian(&fixtures::example2_graph());
//! let cert = certify_laplacian(&bundle).unwrap();
//! assert_eq!(cert.verdict, Verdict::RealEEP);
//! ```

pub mod certify;
pub mod cli;
pub mod fixtures;
pub mod flow;
pub mod graph;
pub mod io;
pub mod linalg;

pub use linalg::{Complex, ComplexMatrix};

use thiserror::Error;

/// Any error the library can raise.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
    #[error(transparent)]
    Graph(#[from] graph::GraphError),
    #[error(transparent)]
    Certify(#[from] certify::CertifyError),
    #[error(transparent)]
    Flow(#[from] flow::FlowError),
    #[error(transparent)]
    Io(#[from] io::IoError),
}
