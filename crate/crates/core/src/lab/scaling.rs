//! Line-count scaling on the complete multipartite family: s^2 parts of
//! size s give n = s^3 vertices and a line count that grows like n^{4/3}.

use serde::Serialize;

use crate::dh::complete_multipartite;
use crate::lab::LabError;

/// One row of the scaling table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingRow {
    pub side: usize,
    pub n: usize,
    /// Brute-force count over all generator pairs.
    pub distinct_lines: usize,
    /// Pair-classification count: same-part pairs each give a distinct
    /// line, cross-part pairs give one line per part pair.
    pub closed_form: usize,
    pub n_pow_4_3: f64,
    pub ratio: f64,
}

/// Distinct-line count of the complete multipartite graph with `parts`
/// parts of equal `size` >= 3, by classifying generator pairs. A same-part
/// pair {u, v} generates everything outside the part plus {u, v}; a
/// cross-part pair generates the union of the two parts. For size >= 3 all
/// of these member-sets are distinct and none is universal.
pub fn multipartite_line_count(parts: usize, size: usize) -> usize {
    parts * (size * (size - 1) / 2) + parts * (parts - 1) / 2
}

/// For each side s >= 3, builds the complete multipartite graph with s^2
/// parts of size s (n = s^3), counts distinct lines by brute force, and
/// reports the closed form and the ratio to n^{4/3} (= s^4 exactly).
pub fn scaling_experiment(sides: &[usize]) -> Result<Vec<ScalingRow>, LabError> {
    for &s in sides {
        if s < 3 {
            return Err(LabError::SideTooSmall(s));
        }
    }
    let mut rows = Vec::with_capacity(sides.len());
    for &s in sides {
        let parts = s * s;
        let g = complete_multipartite(&vec![s; parts])?;
        let m = g.all_pairs_distances()?;
        let lines = m.all_lines();
        let n = g.n();
        let n_pow_4_3 = (s * s * s * s) as f64;
        let distinct_lines = lines.distinct_count();
        rows.push(ScalingRow {
            side: s,
            n,
            distinct_lines,
            closed_form: multipartite_line_count(parts, s),
            n_pow_4_3,
            ratio: distinct_lines as f64 / n_pow_4_3,
        });
    }
    Ok(rows)
}

/// CSV form: side, n, distinct_lines, n_4_3, ratio.
pub fn scaling_csv(rows: &[ScalingRow]) -> String {
    let mut out = String::from("side,n,distinct_lines,n_4_3,ratio\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.side, r.n, r.distinct_lines, r.n_pow_4_3, r.ratio
        ));
    }
    out
}
