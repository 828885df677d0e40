//! Corpus sweeps: run the n-lines-or-universal predicate over exhaustive
//! or randomized corpora, aggregate violations and extremal records, and
//! render the result as JSON or CSV. Chunks are processed independently
//! (in parallel when enabled) and merged in corpus order, so reports are
//! reproducible byte for byte.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use itertools::Itertools;
use log::debug;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dh::{random_dh, recognize_pruning, Recognition, StepWeights};
use crate::lab::enumerate::{canonical_key, graph_from_edge_mask, mask_is_connected, pair_count, MAX_ENUMERATION_N};
use crate::lab::{graph_verdict, metric_verdict, LabError, Verdict};
use crate::metric::FiniteMetric;
use crate::par;

const CHUNK_BITS: u32 = 14;

/// Which instances a sweep runs over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusSpec {
    /// Every labeled connected graph on 2..=n_max vertices (n_max <= 7).
    Exhaustive { n_max: usize },
    /// `count` graphs from the seeded construction-sequence generator,
    /// each with a vertex count drawn uniformly from [n_min, n_max].
    Random { count: usize, seed: u64, n_min: usize, n_max: usize, weights: StepWeights },
}

impl CorpusSpec {
    /// The default randomized corpus: 10 000 graphs, n in [2, 30], seed 0.
    pub fn random_default() -> Self {
        CorpusSpec::Random {
            count: 10_000,
            seed: 0,
            n_min: 2,
            n_max: 30,
            weights: StepWeights::default(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            CorpusSpec::Exhaustive { n_max } => format!("exhaustive n_max={n_max}"),
            CorpusSpec::Random { count, seed, n_min, n_max, weights } => {
                let (p, f, t) = weights.as_triple();
                format!("random count={count} seed={seed} n=[{n_min},{n_max}] weights={p},{f},{t}")
            }
        }
    }
}

/// Per-n extremal record: how many instances ran, the minimum distinct-line
/// count among instances with no universal line, and how many violated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalRecord {
    pub n: usize,
    pub instances: u64,
    pub min_lines_non_universal: Option<usize>,
    pub violations: u64,
}

/// Aggregated outcome of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub corpus: String,
    pub instances: u64,
    pub violations: Vec<Verdict>,
    pub records: Vec<ExtremalRecord>,
    /// Wall-clock time; populated by the sweep but skipped in JSON unless
    /// the caller keeps it, so default reports stay byte-reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

impl SweepReport {
    pub fn violation_count(&self) -> u64 {
        self.violations.len() as u64
    }

    /// Drops the wall-clock field so serialized output is run-independent.
    pub fn without_duration(mut self) -> Self {
        self.duration_ms = None;
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// CSV of the per-n records: n, instances, min_lines_non_universal,
    /// violations. The minimum cell is empty when every instance at that n
    /// had a universal line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,instances,min_lines_non_universal,violations\n");
        for r in &self.records {
            let min = r.min_lines_non_universal.map(|m| m.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{},{},{}\n", r.n, r.instances, min, r.violations));
        }
        out
    }

    /// Combines two reports (associative); durations add when both present.
    pub fn merge(mut self, other: SweepReport) -> SweepReport {
        let mut agg = Aggregate::default();
        for r in self.records.drain(..).chain(other.records) {
            let acc = agg.per_n.entry(r.n).or_default();
            acc.instances += r.instances;
            acc.violations += r.violations;
            acc.min_nonuniversal = match (acc.min_nonuniversal, r.min_lines_non_universal) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
        }
        agg.instances = self.instances + other.instances;
        agg.violations = self.violations;
        agg.violations.extend(other.violations);
        let duration_ms = match (self.duration_ms, other.duration_ms) {
            (Some(a), Some(b)) => Some(a + b),
            (a, b) => a.or(b),
        };
        let corpus = if self.corpus == other.corpus {
            self.corpus
        } else {
            format!("{} + {}", self.corpus, other.corpus)
        };
        let mut report = agg.into_report(corpus);
        report.duration_ms = duration_ms;
        report
    }
}

#[derive(Debug, Default, Clone)]
struct RecordAcc {
    instances: u64,
    min_nonuniversal: Option<usize>,
    violations: u64,
}

#[derive(Debug, Default)]
struct Aggregate {
    instances: u64,
    violations: Vec<Verdict>,
    per_n: BTreeMap<usize, RecordAcc>,
}

impl Aggregate {
    fn add(&mut self, verdict: Verdict) {
        self.instances += 1;
        let acc = self.per_n.entry(verdict.n).or_default();
        acc.instances += 1;
        if !verdict.has_universal {
            acc.min_nonuniversal = Some(
                acc.min_nonuniversal
                    .map_or(verdict.distinct_lines, |m| m.min(verdict.distinct_lines)),
            );
        }
        if !verdict.satisfies {
            acc.violations += 1;
            self.violations.push(verdict);
        }
    }

    fn absorb(&mut self, other: Aggregate) {
        self.instances += other.instances;
        self.violations.extend(other.violations);
        for (n, acc) in other.per_n {
            let mine = self.per_n.entry(n).or_default();
            mine.instances += acc.instances;
            mine.violations += acc.violations;
            mine.min_nonuniversal = match (mine.min_nonuniversal, acc.min_nonuniversal) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
        }
    }

    fn into_report(self, corpus: String) -> SweepReport {
        SweepReport {
            corpus,
            instances: self.instances,
            violations: self.violations,
            records: self
                .per_n
                .into_iter()
                .map(|(n, acc)| ExtremalRecord {
                    n,
                    instances: acc.instances,
                    min_lines_non_universal: acc.min_nonuniversal,
                    violations: acc.violations,
                })
                .collect(),
            duration_ms: None,
        }
    }
}

/// Sweeps the corpus restricted to distance-hereditary graphs; every
/// verdict is expected to satisfy the predicate.
pub fn sweep_theorem(corpus: &CorpusSpec, canonical: bool) -> Result<SweepReport, LabError> {
    sweep_graph_corpus(corpus, canonical, true)
}

/// Sweeps every connected graph in the corpus, with no class filter: a
/// violation here would falsify the general conjecture.
pub fn sweep_conjecture(corpus: &CorpusSpec, canonical: bool) -> Result<SweepReport, LabError> {
    sweep_graph_corpus(corpus, canonical, false)
}

fn sweep_graph_corpus(
    corpus: &CorpusSpec,
    canonical: bool,
    dh_only: bool,
) -> Result<SweepReport, LabError> {
    let started = Instant::now();
    let mut agg = Aggregate::default();
    match *corpus {
        CorpusSpec::Exhaustive { n_max } => {
            if !(2..=MAX_ENUMERATION_N).contains(&n_max) {
                return Err(LabError::EnumerationRange(n_max));
            }
            for n in 2..=n_max {
                let part = if canonical {
                    exhaustive_canonical_pass(n, dh_only)
                } else {
                    exhaustive_labeled_pass(n, dh_only)
                };
                debug!("exhaustive n={n}: {} instances so far", part.instances);
                agg.absorb(part);
            }
        }
        CorpusSpec::Random { count, seed, n_min, n_max, weights } => {
            if n_min < 2 || n_min > n_max {
                return Err(LabError::RandomRange { n_min, n_max });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let params: Vec<(usize, usize, u64)> = (0..count)
                .map(|i| (i, rng.random_range(n_min..=n_max), rng.next_u64()))
                .collect();
            let verdicts = par::map_vec(params, move |(i, n, sub_seed)| {
                let g = random_dh(n, sub_seed, weights);
                let m = g.all_pairs_distances().expect("generated graphs are connected");
                let instance = format!("random i={i} n={n} seed={sub_seed}");
                graph_verdict(instance, &g, &m)
            });
            for v in verdicts {
                agg.add(v);
            }
        }
    }
    let mut report = agg.into_report(corpus.describe());
    report.duration_ms = Some(started.elapsed().as_millis() as u64);
    Ok(report)
}

fn chunk_ranges(total: u64) -> Vec<(u64, u64)> {
    let chunk = 1u64 << CHUNK_BITS;
    let mut ranges = Vec::new();
    let mut start = 0;
    while start < total {
        ranges.push((start, (start + chunk).min(total)));
        start += chunk;
    }
    ranges
}

fn verdict_for_mask(n: usize, mask: u64, dh_only: bool) -> Option<Verdict> {
    let g = graph_from_edge_mask(n, mask);
    if dh_only {
        match recognize_pruning(&g).expect("mask graphs are connected") {
            Recognition::DistanceHereditary { .. } => {}
            Recognition::NotDistanceHereditary { .. } => return None,
        }
    }
    let m = g.all_pairs_distances().expect("mask graphs are connected");
    Some(graph_verdict(format!("n={n} mask={mask}"), &g, &m))
}

fn exhaustive_labeled_pass(n: usize, dh_only: bool) -> Aggregate {
    let ranges = chunk_ranges(1u64 << pair_count(n));
    let partials = par::map_vec(ranges, move |(start, end)| {
        let mut local = Aggregate::default();
        for mask in start..end {
            if !mask_is_connected(n, mask) {
                continue;
            }
            if let Some(v) = verdict_for_mask(n, mask, dh_only) {
                local.add(v);
            }
        }
        local
    });
    let mut agg = Aggregate::default();
    for part in partials {
        agg.absorb(part);
    }
    agg
}

/// Canonical mode: keys are computed in parallel, deduplicated in mask
/// order (so each class is represented by its smallest mask), then the
/// representatives are judged in parallel.
fn exhaustive_canonical_pass(n: usize, dh_only: bool) -> Aggregate {
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let ranges = chunk_ranges(1u64 << pair_count(n));
    let keyed: Vec<Vec<(u64, u64)>> = par::map_vec(ranges, |(start, end)| {
        let mut out = Vec::new();
        for mask in start..end {
            if !mask_is_connected(n, mask) {
                continue;
            }
            let g = graph_from_edge_mask(n, mask);
            let edges: Vec<(usize, usize)> = g.edges().collect();
            out.push((mask, canonical_key(n, &edges, &perms)));
        }
        out
    });
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for chunk in keyed {
        for (mask, key) in chunk {
            if seen.insert(key) {
                reps.push(mask);
            }
        }
    }
    let verdicts = par::map_vec(reps, move |mask| verdict_for_mask(n, mask, dh_only));
    let mut agg = Aggregate::default();
    for v in verdicts.into_iter().flatten() {
        agg.add(v);
    }
    agg
}

/// Enumerates every symmetric assignment of {1, 2} to the off-diagonal
/// entries on n points (each is automatically a metric) and checks the
/// predicate on all of them. Supported for 2 <= n <= 6.
pub fn sweep_two_metric(n: usize) -> Result<SweepReport, LabError> {
    if !(2..=6).contains(&n) {
        return Err(LabError::TwoMetricRange(n));
    }
    let started = Instant::now();
    let ranges = chunk_ranges(1u64 << pair_count(n));
    let partials = par::map_vec(ranges, move |(start, end)| {
        let mut local = Aggregate::default();
        for mask in start..end {
            let m = two_metric_from_mask(n, mask);
            local.add(metric_verdict(format!("n={n} mask={mask}"), &m));
        }
        local
    });
    let mut agg = Aggregate::default();
    for part in partials {
        agg.absorb(part);
    }
    let mut report = agg.into_report(format!("two-metric n={n}"));
    report.duration_ms = Some(started.elapsed().as_millis() as u64);
    Ok(report)
}

fn two_metric_from_mask(n: usize, mask: u64) -> FiniteMetric {
    let mut rows = vec![vec![0u64; n]; n];
    let mut bit = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            let d = 1 + ((mask >> bit) & 1);
            rows[u][v] = d;
            rows[v][u] = d;
            bit += 1;
        }
    }
    FiniteMetric::validate(&rows).expect("all {1,2} assignments satisfy the axioms")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_small_sweeps_have_no_violations() {
        let report = sweep_theorem(&CorpusSpec::Exhaustive { n_max: 5 }, false).unwrap();
        assert_eq!(report.violation_count(), 0);
        assert!(report.instances > 0);

        let report = sweep_conjecture(&CorpusSpec::Exhaustive { n_max: 5 }, false).unwrap();
        assert_eq!(report.violation_count(), 0);
        // labeled connected graph counts on 2..=5 vertices
        assert_eq!(report.instances, 1 + 4 + 38 + 728);
    }

    #[test]
    fn exhaustive_n3_records_k3_as_minimum() {
        let report = sweep_theorem(&CorpusSpec::Exhaustive { n_max: 3 }, false).unwrap();
        assert_eq!(report.violation_count(), 0);
        let n3 = report.records.iter().find(|r| r.n == 3).unwrap();
        assert_eq!(n3.min_lines_non_universal, Some(3));
        // at n=2 the single connected graph has a universal line
        let n2 = report.records.iter().find(|r| r.n == 2).unwrap();
        assert_eq!(n2.min_lines_non_universal, None);
    }

    #[test]
    fn canonical_and_labeled_sweeps_agree_on_violations() {
        for n_max in 2..=5 {
            let labeled = sweep_conjecture(&CorpusSpec::Exhaustive { n_max }, false).unwrap();
            let canonical = sweep_conjecture(&CorpusSpec::Exhaustive { n_max }, true).unwrap();
            assert_eq!(labeled.violation_count(), canonical.violation_count());
            assert!(canonical.instances <= labeled.instances);
        }
    }

    #[test]
    fn random_sweep_is_reproducible() {
        let corpus = CorpusSpec::Random {
            count: 200,
            seed: 1,
            n_min: 2,
            n_max: 30,
            weights: StepWeights::default(),
        };
        let a = sweep_theorem(&corpus, false).unwrap().without_duration();
        let b = sweep_theorem(&corpus, false).unwrap().without_duration();
        assert_eq!(a, b);
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.violation_count(), 0);
        assert_eq!(a.instances, 200);
    }

    #[test]
    fn random_range_is_validated() {
        let corpus = CorpusSpec::Random {
            count: 1,
            seed: 0,
            n_min: 1,
            n_max: 5,
            weights: StepWeights::default(),
        };
        assert!(matches!(
            sweep_theorem(&corpus, false),
            Err(LabError::RandomRange { n_min: 1, n_max: 5 })
        ));
    }

    #[test]
    fn two_metric_examples() {
        let r = sweep_two_metric(3).unwrap();
        assert_eq!(r.instances, 8);
        assert_eq!(r.violation_count(), 0);

        let r = sweep_two_metric(2).unwrap();
        assert_eq!(r.instances, 2);
        assert_eq!(r.violation_count(), 0);
        assert_eq!(r.records[0].min_lines_non_universal, None);

        let r = sweep_two_metric(5).unwrap();
        assert_eq!(r.instances, 1024);
        assert_eq!(r.violation_count(), 0);

        assert!(matches!(sweep_two_metric(7), Err(LabError::TwoMetricRange(7))));
    }

    #[test]
    fn reports_render_to_csv_and_merge() {
        let a = sweep_two_metric(2).unwrap().without_duration();
        let b = sweep_two_metric(3).unwrap().without_duration();
        let merged = a.merge(b);
        assert_eq!(merged.instances, 10);
        let csv = merged.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("n,instances,min_lines_non_universal,violations"));
        assert_eq!(lines.next(), Some("2,2,,0"));
        assert_eq!(lines.next(), Some("3,8,3,0"));
    }
}
