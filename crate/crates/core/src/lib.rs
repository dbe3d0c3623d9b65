//! A laboratory for the two-stage randomized Max-Bisection algorithm on
//! {C4,C6}-free graphs.
//!
//! The pipeline is: build or load a [`Graph`], pair its vertices with a
//! [`QuasiPerfectMatching`], run the two-stage labelling in [`bisection`],
//! and check the outcome against the exact machinery in [`tail`],
//! [`analyzer`] and [`oracle`].

pub mod analyzer;
pub mod bisection;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod rng;
pub mod tail;

pub use graph::{DegeneracyOrder, Graph, GraphError, Vertex};
pub use matching::{PairTag, QpmPair, QuasiPerfectMatching};
pub use tail::Rational;
