//! Finite metric spaces with integral distances: betweenness, the line
//! operator, interval/extension sets, distinct-line counting, and
//! rational-to-integral scaling.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("a metric space needs at least 2 points (got {0})")]
    TooFewPoints(usize),
    #[error("points must be pairwise distinct")]
    NotDistinct,
    #[error("point {point} out of range for a metric on {n} points")]
    PointOutOfRange { point: usize, n: usize },
    #[error("distance scaling overflowed 64-bit range")]
    Overflow,
    #[error("scale factor must be positive")]
    ZeroScale,
    #[error("metric axioms violated: {0}")]
    Invalid(ViolationList),
}

/// A single violated metric axiom, with the offending indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MetricViolation {
    NotSquare { rows: usize, row: usize, len: usize },
    NonzeroDiagonal { point: usize },
    Asymmetric { u: usize, v: usize },
    NonPositive { u: usize, v: usize },
    Triangle { u: usize, v: usize, w: usize },
}

impl std::fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MetricViolation::NotSquare { rows, row, len } => {
                write!(f, "row {row} has {len} entries, expected {rows}")
            }
            MetricViolation::NonzeroDiagonal { point } => write!(f, "d({point},{point}) != 0"),
            MetricViolation::Asymmetric { u, v } => write!(f, "d({u},{v}) != d({v},{u})"),
            MetricViolation::NonPositive { u, v } => write!(f, "d({u},{v}) = 0 for distinct points"),
            MetricViolation::Triangle { u, v, w } => {
                write!(f, "d({u},{w}) > d({u},{v}) + d({v},{w})")
            }
        }
    }
}

/// All axiom violations found in a candidate distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationList(pub Vec<MetricViolation>);

impl std::fmt::Display for ViolationList {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// A metric space on points `0..n` with non-negative integer distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMetric {
    n: usize,
    d: Vec<u64>, // row-major n x n
}

/// The line generated by a pair: the generators plus every point that is
/// between them or extends the pair on either side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub generators: (usize, usize),
    pub members: Vec<usize>, // sorted, deduplicated
}

impl Line {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.members.binary_search(&p).is_ok()
    }
}

/// Every line of a metric space: distinct member-sets plus the map from
/// each generator pair to its line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineSet {
    n: usize,
    lines: Vec<Vec<usize>>, // distinct member-sets, sorted lexicographically
    generator_index: BTreeMap<(usize, usize), usize>,
}

/// JSON form of a [`LineSet`]: generator keys are "u,v" strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LineSetReport {
    pub n: usize,
    pub distinct_lines: usize,
    pub has_universal: bool,
    pub lines: Vec<Vec<usize>>,
    pub generators: BTreeMap<String, usize>,
}

impl LineSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of distinct lines (member-sets).
    pub fn distinct_count(&self) -> usize {
        self.lines.len()
    }

    pub fn has_universal(&self) -> bool {
        self.lines.iter().any(|l| l.len() == self.n)
    }

    /// Distinct member-sets in lexicographic order.
    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    /// Members of the line generated by an unordered pair.
    pub fn line_for_pair(&self, u: usize, v: usize) -> Option<&[usize]> {
        let key = (u.min(v), u.max(v));
        self.generator_index.get(&key).map(|&i| self.lines[i].as_slice())
    }

    pub fn generator_index(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.generator_index
    }

    pub fn to_report(&self) -> LineSetReport {
        LineSetReport {
            n: self.n,
            distinct_lines: self.distinct_count(),
            has_universal: self.has_universal(),
            lines: self.lines.clone(),
            generators: self
                .generator_index
                .iter()
                .map(|(&(u, v), &i)| (format!("{u},{v}"), i))
                .collect(),
        }
    }
}

fn check_axioms<T: Copy + Ord + std::ops::Add<Output = T> + Default>(
    rows: &[Vec<T>],
) -> Vec<MetricViolation> {
    let n = rows.len();
    let zero = T::default();
    let mut violations = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            violations.push(MetricViolation::NotSquare { rows: n, row: i, len: row.len() });
        }
    }
    if !violations.is_empty() {
        return violations;
    }
    for u in 0..n {
        if rows[u][u] != zero {
            violations.push(MetricViolation::NonzeroDiagonal { point: u });
        }
        for v in (u + 1)..n {
            if rows[u][v] != rows[v][u] {
                violations.push(MetricViolation::Asymmetric { u, v });
            }
            if rows[u][v] == zero {
                violations.push(MetricViolation::NonPositive { u, v });
            }
        }
    }
    for u in 0..n {
        for v in 0..n {
            if v == u {
                continue;
            }
            for w in 0..n {
                if w == u || w == v {
                    continue;
                }
                if rows[u][w] > rows[u][v] + rows[v][w] {
                    violations.push(MetricViolation::Triangle { u, v, w });
                }
            }
        }
    }
    violations
}

impl FiniteMetric {
    /// Validates a candidate distance matrix against every metric axiom.
    /// On failure the full violation list is returned.
    pub fn validate(rows: &[Vec<u64>]) -> Result<Self, MetricError> {
        if rows.len() < 2 {
            return Err(MetricError::TooFewPoints(rows.len()));
        }
        let violations = check_axioms(rows);
        if !violations.is_empty() {
            return Err(MetricError::Invalid(ViolationList(violations)));
        }
        let n = rows.len();
        let mut d = vec![0u64; n * n];
        for (u, row) in rows.iter().enumerate() {
            d[u * n..(u + 1) * n].copy_from_slice(row);
        }
        Ok(FiniteMetric { n, d })
    }

    /// BFS distances of a connected graph are a metric by construction;
    /// only the point-count gate applies.
    pub(crate) fn from_graph_distances(n: usize, d: Vec<u64>) -> Result<Self, MetricError> {
        if n < 2 {
            return Err(MetricError::TooFewPoints(n));
        }
        debug_assert_eq!(d.len(), n * n);
        Ok(FiniteMetric { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn distance(&self, u: usize, v: usize) -> u64 {
        self.d[u * self.n + v]
    }

    /// The k for which this is a k-metric: the largest distance.
    pub fn max_distance(&self) -> u64 {
        self.d.iter().copied().max().unwrap_or(0)
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.n)
            .map(|u| self.d[u * self.n..(u + 1) * self.n].to_vec())
            .collect()
    }

    fn check_point(&self, p: usize) -> Result<(), MetricError> {
        if p >= self.n {
            Err(MetricError::PointOutOfRange { point: p, n: self.n })
        } else {
            Ok(())
        }
    }

    fn check_pair(&self, x: usize, y: usize) -> Result<(), MetricError> {
        self.check_point(x)?;
        self.check_point(y)?;
        if x == y {
            return Err(MetricError::NotDistinct);
        }
        Ok(())
    }

    /// Betweenness on distinct points: d(a,b) + d(b,c) = d(a,c).
    pub fn between(&self, a: usize, b: usize, c: usize) -> Result<bool, MetricError> {
        self.check_point(a)?;
        self.check_point(b)?;
        self.check_point(c)?;
        if a == b || b == c || a == c {
            return Err(MetricError::NotDistinct);
        }
        Ok(self.between_unchecked(a, b, c))
    }

    #[inline]
    fn between_unchecked(&self, a: usize, b: usize, c: usize) -> bool {
        self.distance(a, b) + self.distance(b, c) == self.distance(a, c)
    }

    /// Extension of the pair: { z : z beyond y as seen from x }.
    pub fn ext_set(&self, x: usize, y: usize) -> Result<Vec<usize>, MetricError> {
        self.check_pair(x, y)?;
        Ok((0..self.n)
            .filter(|&z| z != x && z != y && self.between_unchecked(x, y, z))
            .collect())
    }

    /// Open interval: { z : z strictly between x and y }.
    pub fn interval_open(&self, x: usize, y: usize) -> Result<Vec<usize>, MetricError> {
        self.check_pair(x, y)?;
        Ok((0..self.n)
            .filter(|&z| z != x && z != y && self.between_unchecked(x, z, y))
            .collect())
    }

    /// Half-open interval: {x} plus the open interval.
    pub fn interval_half(&self, x: usize, y: usize) -> Result<Vec<usize>, MetricError> {
        let mut out = self.interval_open(x, y)?;
        out.push(x);
        out.sort_unstable();
        Ok(out)
    }

    /// Closed interval: {x, y} plus the open interval.
    pub fn interval_closed(&self, x: usize, y: usize) -> Result<Vec<usize>, MetricError> {
        let mut out = self.interval_open(x, y)?;
        out.push(x);
        out.push(y);
        out.sort_unstable();
        Ok(out)
    }

    /// The line generated by two distinct points.
    pub fn line_of(&self, u: usize, v: usize) -> Result<Line, MetricError> {
        self.check_pair(u, v)?;
        Ok(self.line_unchecked(u, v))
    }

    fn line_unchecked(&self, u: usize, v: usize) -> Line {
        let mut members = Vec::new();
        for p in 0..self.n {
            if p == u || p == v {
                members.push(p);
                continue;
            }
            if self.between_unchecked(p, u, v)
                || self.between_unchecked(u, p, v)
                || self.between_unchecked(u, v, p)
            {
                members.push(p);
            }
        }
        Line { generators: (u.min(v), u.max(v)), members }
    }

    /// True iff the line covers every point.
    pub fn is_universal(&self, line: &Line) -> bool {
        line.members.len() == self.n
    }

    /// One line per unordered pair, deduplicated into distinct member-sets.
    /// Pairs are evaluated independently (in parallel when enabled) and
    /// merged into a canonical order, so the result never depends on
    /// evaluation order.
    pub fn all_lines(&self) -> LineSet {
        let n = self.n;
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        // fan-out only pays off on large point sets; sweeps parallelize
        // across instances instead
        let member_sets: Vec<Vec<usize>> = if pairs.len() >= 512 {
            par::map_vec(pairs.clone(), |(u, v)| self.line_unchecked(u, v).members)
        } else {
            pairs.iter().map(|&(u, v)| self.line_unchecked(u, v).members).collect()
        };

        let mut lines: Vec<Vec<usize>> = member_sets.clone();
        lines.sort();
        lines.dedup();
        let generator_index = pairs
            .into_iter()
            .zip(member_sets)
            .map(|(pair, members)| {
                let idx = lines.binary_search(&members).expect("line present after dedup");
                (pair, idx)
            })
            .collect();
        LineSet { n, lines, generator_index }
    }

    /// Multiplies every distance by a positive integer. Betweenness is a
    /// linear equation, so lines are unchanged; overflow is a hard error.
    pub fn scale(&self, k: u64) -> Result<Self, MetricError> {
        if k == 0 {
            return Err(MetricError::ZeroScale);
        }
        let d = self
            .d
            .iter()
            .map(|&x| x.checked_mul(k).ok_or(MetricError::Overflow))
            .collect::<Result<Vec<u64>, _>>()?;
        Ok(FiniteMetric { n: self.n, d })
    }
}

/// Scales a rational metric by the least common multiple of all
/// denominators, yielding an integral metric with the same lines.
pub fn integralize_rational(rows: &[Vec<Ratio<u64>>]) -> Result<FiniteMetric, MetricError> {
    if rows.len() < 2 {
        return Err(MetricError::TooFewPoints(rows.len()));
    }
    let violations = check_axioms(rows);
    if !violations.is_empty() {
        return Err(MetricError::Invalid(ViolationList(violations)));
    }
    let mut lcm: u64 = 1;
    for row in rows {
        for r in row {
            lcm = checked_lcm(lcm, *r.denom()).ok_or(MetricError::Overflow)?;
        }
    }
    let n = rows.len();
    let mut d = vec![0u64; n * n];
    for (u, row) in rows.iter().enumerate() {
        for (v, r) in row.iter().enumerate() {
            let scaled = r
                .numer()
                .checked_mul(lcm / r.denom())
                .ok_or(MetricError::Overflow)?;
            d[u * n + v] = scaled;
        }
    }
    Ok(FiniteMetric { n, d })
}

fn checked_lcm(a: u64, b: u64) -> Option<u64> {
    let g = a.gcd(&b);
    (a / g).checked_mul(b)
}
