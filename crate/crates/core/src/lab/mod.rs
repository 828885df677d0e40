//! The verification harness: per-instance verdicts for the
//! n-lines-or-universal predicate, structural property verifiers for
//! distance-hereditary inputs, exhaustive and randomized sweeps, and the
//! line-count scaling experiment.

mod enumerate;
mod scaling;
mod sweep;

pub use enumerate::{canonical_form, enumerate_connected_graphs, graph_from_edge_mask, pair_count};
pub use scaling::{multipartite_line_count, scaling_csv, scaling_experiment, ScalingRow};
pub use sweep::{
    sweep_conjecture, sweep_theorem, sweep_two_metric, CorpusSpec, ExtremalRecord, SweepReport,
};

use serde::Serialize;
use thiserror::Error;

use crate::dh::{self, DhError, Recognition};
use crate::graph::{Graph, GraphError};
use crate::metric::{FiniteMetric, MetricError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabError {
    #[error("predicate needs at least 2 points (got {0})")]
    TooFewPoints(usize),
    #[error("recognition failed: input is not distance-hereditary (elimination stuck on vertices {residual_vertices:?})")]
    NotDistanceHereditary { residual_vertices: Vec<usize> },
    #[error("exhaustive enumeration is supported for 2 <= n <= 7 (got {0})")]
    EnumerationRange(usize),
    #[error("canonical form is supported for n <= 8 (got {0})")]
    CanonicalRange(usize),
    #[error("2-metric sweep is supported for 2 <= n <= 6 (got {0})")]
    TwoMetricRange(usize),
    #[error("random corpus needs 2 <= n_min <= n_max (got [{n_min},{n_max}])")]
    RandomRange { n_min: usize, n_max: usize },
    #[error("scaling experiment needs side >= 3 (got {0}): with side 2 every same-part line is universal and the count collapses")]
    SideTooSmall(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Dh(#[from] DhError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// The instance that falsified a predicate, in replayable form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    Graph { n: usize, edges: Vec<(usize, usize)> },
    Metric { rows: Vec<Vec<u64>> },
}

/// Outcome of the n-lines-or-universal predicate on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub instance: String,
    pub n: usize,
    pub distinct_lines: usize,
    pub has_universal: bool,
    pub satisfies: bool,
    pub witness: Option<Witness>,
}

pub(crate) fn metric_verdict(instance: String, m: &FiniteMetric) -> Verdict {
    let lines = m.all_lines();
    let distinct_lines = lines.distinct_count();
    let has_universal = lines.has_universal();
    let satisfies = distinct_lines >= m.n() || has_universal;
    Verdict {
        instance,
        n: m.n(),
        distinct_lines,
        has_universal,
        satisfies,
        witness: (!satisfies).then(|| Witness::Metric { rows: m.rows() }),
    }
}

pub(crate) fn graph_verdict(instance: String, g: &Graph, m: &FiniteMetric) -> Verdict {
    let mut verdict = metric_verdict(instance, m);
    if !verdict.satisfies {
        verdict.witness = Some(Witness::Graph { n: g.n(), edges: g.edges().collect() });
    }
    verdict
}

/// Evaluates the predicate "at least n distinct lines or a universal line"
/// on one metric space. A falsifying metric comes back as a witness.
pub fn check_chen_chvatal(m: &FiniteMetric) -> Verdict {
    let instance = format!("metric(n={}, k={})", m.n(), m.max_distance());
    metric_verdict(instance, m)
}

/// Evaluates the predicate on the metric of a connected distance-hereditary
/// graph. Inputs failing recognition are rejected, naming the stuck residual.
pub fn check_dh_theorem(g: &Graph) -> Result<Verdict, LabError> {
    if g.n() < 2 {
        return Err(LabError::TooFewPoints(g.n()));
    }
    require_distance_hereditary(g)?;
    let m = g.all_pairs_distances()?;
    let instance = format!("graph(n={}, m={})", g.n(), g.edge_count());
    Ok(graph_verdict(instance, g, &m))
}

fn require_distance_hereditary(g: &Graph) -> Result<(), LabError> {
    match dh::recognize_pruning(g)? {
        Recognition::DistanceHereditary { .. } => Ok(()),
        Recognition::NotDistanceHereditary { residual_vertices, .. } => {
            Err(LabError::NotDistanceHereditary { residual_vertices })
        }
    }
}

/// Checks that every edge of a connected distance-hereditary graph is in a
/// triangle or generates a universal line. Returns a violating edge if any
/// (none is expected on this class).
pub fn verify_edge_triangle_property(g: &Graph) -> Result<Option<(usize, usize)>, LabError> {
    require_distance_hereditary(g)?;
    if g.n() < 2 {
        return Ok(None);
    }
    let m = g.all_pairs_distances()?;
    for (x, y) in g.edges().collect::<Vec<_>>() {
        let in_triangle = g.edge_in_triangle(x, y)?;
        if !in_triangle {
            let line = m.line_of(x, y)?;
            if !m.is_universal(&line) {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

/// Checks that whenever two generator pairs through a common point x give
/// the same line, the third pair's line is universal or x sits between the
/// other two points. Returns a violating triple (x, a, b) if any.
pub fn verify_coincident_line_property(
    g: &Graph,
) -> Result<Option<(usize, usize, usize)>, LabError> {
    require_distance_hereditary(g)?;
    let n = g.n();
    if n < 3 {
        return Ok(None);
    }
    let m = g.all_pairs_distances()?;
    let lines = m.all_lines();
    let universal: Vec<bool> = lines.lines().iter().map(|l| l.len() == n).collect();
    let index = lines.generator_index();
    let idx = |u: usize, v: usize| index[&(u.min(v), u.max(v))];
    for a in 0..n {
        for b in (a + 1)..n {
            let ab_universal = universal[idx(a, b)];
            for x in 0..n {
                if x == a || x == b {
                    continue;
                }
                if idx(x, a) == idx(x, b) && !ab_universal && !m.between(a, x, b)? {
                    return Ok(Some((x, a, b)));
                }
            }
        }
    }
    Ok(None)
}
