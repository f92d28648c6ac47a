#![forbid(unsafe_code)]

//! Cover-cost analysis for random walks on finite undirected graphs.
//!
//! A cover tour is a simple random walk from a root vertex `r` that runs
//! until every vertex has been visited. Step `i` of the tour is charged
//! `1 - k/n`, where `k` is the number of non-root vertices already visited
//! when the step is taken and `n = |V| - 1`. The *cover cost* `cc_r(G)` is
//! the expected total charge of the tour, and the *Cover Cost* is its
//! rescaling `CC_r(G) = n * cc_r(G)`, which equals the sum of the expected
//! hitting times from `r` to every vertex.
//!
//! The crate computes `cc_r` by three independent exact routes and two
//! empirical ones:
//!
//! * [`hitting::cover_cost_hitting`]: sum of hitting times, each obtained
//!   from the first-step linear system (the production path, `O(n^4)`).
//! * [`escape::cover_cost_theorem`]: the double sum
//!   `CC_r = sum_{x != y} p_r(x<y) / p_xy` over escape and
//!   before-probabilities, each from a harmonic solve (`O(n^5)`,
//!   verification path).
//! * [`escape::d_vector`]: the departing-charge vector `D`, with
//!   `cc_r = sum_x D(x)` (`O(n^4)`).
//! * [`closed_forms`]: exact formulas for paths and stars, the
//!   confluent-based double sum for trees, and the Wiener-index identity.
//! * [`simulate`]: a seeded Monte Carlo cover-tour sampler plus an exact
//!   subset-DP oracle for small graphs.
//!
//! [`verify`] cross-checks all routes against each other on built-in
//! corpora; the `covercost` binary fronts everything on the command line.
//!
//! With the default `parallel` feature the per-target solves, per-pair
//! harmonic solves and Monte Carlo walks run on rayon. Disabling the
//! feature yields a dependency-free sequential build with bitwise-identical
//! results.

pub mod cli;
pub mod closed_forms;
pub mod escape;
mod exec;
pub mod graph;
pub mod hitting;
pub mod linalg;
pub mod simulate;
pub mod verify;

pub use graph::{Graph, GraphError, GraphKind};
pub use linalg::SolveError;

use thiserror::Error;

/// Errors from the analysis operations (graph construction errors are
/// [`GraphError`], solver failures [`SolveError`]).
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("vertex {vertex} out of range (graph has {vertex_count} vertices)")]
    InvalidVertex { vertex: usize, vertex_count: usize },
    #[error("the two vertices of an escape/before query must differ (both were {0})")]
    EqualVertexPair(usize),
    #[error("operation requires a tree, but the graph has {edges} edges on {vertices} vertices")]
    NotATree { vertices: usize, edges: usize },
    #[error("root {root} out of range for a path on {n} edges")]
    RootOutOfRange { root: usize, n: usize },
    #[error("path midpoint/endpoint comparison requires an even edge count, got {0}")]
    OddPathLength(usize),
    #[error("exact oracle limited to {max} vertices, graph has {vertices}")]
    TooLargeForOracle { vertices: usize, max: usize },
    #[error("at least one walk is required")]
    NoWalks,
}

/// A cover-cost value in both normalizations.
///
/// `total` is the Cover Cost `CC_r(G)`; `per_vertex` is the cover cost
/// `cc_r(G) = CC_r(G) / n` with `n = |V| - 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverCost {
    pub total: f64,
    pub per_vertex: f64,
}

impl CoverCost {
    /// Build from `CC` (a sum of hitting times) and `n`.
    pub fn from_total(total: f64, n: usize) -> Self {
        Self {
            total,
            per_vertex: total / n as f64,
        }
    }

    /// Build from `cc` (a sum of departing charges) and `n`.
    pub fn from_per_vertex(per_vertex: f64, n: usize) -> Self {
        Self {
            total: per_vertex * n as f64,
            per_vertex,
        }
    }
}
