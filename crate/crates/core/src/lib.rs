//! Lines of finite metric spaces induced by graphs, distance-hereditary
//! graph recognition and generation, and an exhaustive verification
//! workbench for the "n distinct lines or a universal line" property.
//!
//! The crate is organized around four layers:
//!
//! * [`graph`] — undirected simple graphs with BFS levels, all-pairs
//!   distances, connectivity, twins, and induced subgraphs;
//! * [`metric`] — integral finite metric spaces, betweenness, the line
//!   operator, distinct-line counting, and rational-to-integral scaling;
//! * [`dh`] — distance-hereditary recognition (pruning and brute force),
//!   construction sequences, generators, and structural verifiers;
//! * [`lab`] — the verification harness: per-instance verdicts, exhaustive
//!   and randomized sweeps, the 2-metric sweep, and the line-count scaling
//!   experiment on complete multipartite families.
//!
//! [`io`] holds the text formats (edge lists, graph6, metric matrices,
//! construction sequences) shared with the CLI.
//!
//! Built with the `parallel` feature (default), sweeps and line counting
//! fan out over rayon; without it everything runs sequentially with
//! identical results.

pub mod dh;
pub mod graph;
pub mod io;
pub mod lab;
pub mod metric;
mod par;

pub use dh::{
    build_from_sequence, complete_multipartite, random_dh, recognize_bruteforce,
    recognize_pruning, ConstructionSequence, ConstructionStep, Recognition, StepKind, StepWeights,
};
pub use graph::{BfsLevels, Graph, GraphError, TwinKind};
pub use lab::{check_chen_chvatal, check_dh_theorem, SweepReport, Verdict};
pub use metric::{integralize_rational, FiniteMetric, Line, LineSet, MetricError};
