//! Distance-hereditary graphs: pruning-sequence recognition, the
//! brute-force definitional check, construction-based generators, and
//! structural verifiers (crossing chords, level neighborhoods, disjoint
//! twin pairs).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Hard cap for the subset- and cycle-enumeration verifiers.
pub const BRUTE_FORCE_MAX_N: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DhError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("exhaustive check capped at n <= {max} (got n = {n})")]
    TooLarge { n: usize, max: usize },
    #[error("step {index} adds vertex {new_vertex}, expected {expected}")]
    StepOutOfOrder { index: usize, new_vertex: usize, expected: usize },
    #[error("step {index}: anchor {anchor} does not precede new vertex {new_vertex}")]
    AnchorNotEarlier { index: usize, anchor: usize, new_vertex: usize },
    #[error("step 0 cannot be a false twin: copying the isolated base vertex disconnects the replay")]
    FirstStepFalseTwin,
    #[error("step weights must not all be zero")]
    ZeroWeights,
    #[error("complete multipartite graph needs at least 2 parts (got {0})")]
    TooFewParts(usize),
    #[error("part {0} is empty")]
    EmptyPart(usize),
}

/// How a construction step attaches its new vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Pendant,
    TrueTwin,
    FalseTwin,
}

/// One vertex addition: a pendant hung on its anchor, or a twin copy of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionStep {
    pub kind: StepKind,
    pub new_vertex: usize,
    pub anchor: usize,
}

/// An ordered certificate of distance-hereditariness: starting from the
/// single vertex 0, step i adds vertex i+1 by pendant or twin attachment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSequence {
    steps: Vec<ConstructionStep>,
}

impl ConstructionSequence {
    /// Validates the invariants: step i adds exactly vertex i+1, every
    /// anchor is an earlier vertex, and the first step is not a false twin
    /// (the base vertex is isolated, so copying its neighborhood would
    /// disconnect the replay; later vertices always have neighbors).
    pub fn new(steps: Vec<ConstructionStep>) -> Result<Self, DhError> {
        for (index, step) in steps.iter().enumerate() {
            let expected = index + 1;
            if step.new_vertex != expected {
                return Err(DhError::StepOutOfOrder {
                    index,
                    new_vertex: step.new_vertex,
                    expected,
                });
            }
            if step.anchor >= step.new_vertex {
                return Err(DhError::AnchorNotEarlier {
                    index,
                    anchor: step.anchor,
                    new_vertex: step.new_vertex,
                });
            }
            if index == 0 && step.kind == StepKind::FalseTwin {
                return Err(DhError::FirstStepFalseTwin);
            }
        }
        Ok(ConstructionSequence { steps })
    }

    pub fn steps(&self) -> &[ConstructionStep] {
        &self.steps
    }

    /// Vertices of the replayed graph: 1 + number of steps.
    pub fn vertex_count(&self) -> usize {
        self.steps.len() + 1
    }
}

/// Replays a construction sequence into the graph it certifies.
pub fn build_from_sequence(seq: &ConstructionSequence) -> Graph {
    let n = seq.vertex_count();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for step in seq.steps() {
        let new = step.new_vertex;
        let anchor = step.anchor;
        let link = |edges: &mut Vec<(usize, usize)>, adj: &mut Vec<Vec<usize>>, a: usize, b: usize| {
            edges.push((a, b));
            adj[a].push(b);
            adj[b].push(a);
        };
        match step.kind {
            StepKind::Pendant => link(&mut edges, &mut adj, new, anchor),
            StepKind::FalseTwin => {
                for w in adj[anchor].clone() {
                    link(&mut edges, &mut adj, new, w);
                }
            }
            StepKind::TrueTwin => {
                for w in adj[anchor].clone() {
                    link(&mut edges, &mut adj, new, w);
                }
                link(&mut edges, &mut adj, new, anchor);
            }
        }
    }
    Graph::from_edge_list(n, &edges).expect("replayed edges are valid")
}

/// Result of pruning recognition: a construction certificate (with the map
/// from certificate labels back to input labels), or the residual graph
/// where elimination got stuck.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition {
    DistanceHereditary {
        sequence: ConstructionSequence,
        /// relabeling[new] = original vertex carried by certificate index `new`.
        relabeling: Vec<usize>,
    },
    NotDistanceHereditary {
        /// Vertices (original labels) of the stuck residual graph.
        residual_vertices: Vec<usize>,
        residual: Graph,
    },
}

impl Recognition {
    pub fn is_distance_hereditary(&self) -> bool {
        matches!(self, Recognition::DistanceHereditary { .. })
    }

    pub fn sequence(&self) -> Option<&ConstructionSequence> {
        match self {
            Recognition::DistanceHereditary { sequence, .. } => Some(sequence),
            Recognition::NotDistanceHereditary { .. } => None,
        }
    }
}

/// Recognizes distance-hereditary graphs by elimination: repeatedly delete
/// the lowest-index vertex that is a pendant or one of a twin pair
/// (pendant preferred, then false twin, then true twin). Any greedy order
/// succeeds on this class, so getting stuck is a refutation; the deletions
/// are replayed backwards into a construction certificate.
pub fn recognize_pruning(g: &Graph) -> Result<Recognition, DhError> {
    if !g.is_connected() {
        return Err(DhError::Disconnected);
    }
    let n = g.n();
    let mut adj: Vec<std::collections::BTreeSet<usize>> =
        (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut alive: Vec<bool> = vec![true; n];
    let mut alive_count = n;
    // (deleted vertex, anchor, kind)
    let mut deletions: Vec<(usize, usize, StepKind)> = Vec::new();

    while alive_count > 1 {
        let mut chosen: Option<(usize, usize, StepKind)> = None;
        'scan: for v in 0..n {
            if !alive[v] {
                continue;
            }
            if adj[v].len() == 1 {
                let anchor = *adj[v].iter().next().expect("pendant has a neighbor");
                chosen = Some((v, anchor, StepKind::Pendant));
                break 'scan;
            }
            let mut true_partner = None;
            for u in 0..n {
                if u == v || !alive[u] {
                    continue;
                }
                let nv = adj[v].iter().copied().filter(|&w| w != u);
                let nu = adj[u].iter().copied().filter(|&w| w != v);
                if nv.eq(nu) {
                    if adj[v].contains(&u) {
                        if true_partner.is_none() {
                            true_partner = Some(u);
                        }
                    } else {
                        chosen = Some((v, u, StepKind::FalseTwin));
                        break 'scan;
                    }
                }
            }
            if let Some(u) = true_partner {
                chosen = Some((v, u, StepKind::TrueTwin));
                break 'scan;
            }
        }
        match chosen {
            Some((v, anchor, kind)) => {
                for w in adj[v].clone() {
                    adj[w].remove(&v);
                }
                adj[v].clear();
                alive[v] = false;
                alive_count -= 1;
                deletions.push((v, anchor, kind));
            }
            None => {
                let residual_vertices: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
                let (residual, _) = g
                    .induced_subgraph(&residual_vertices)
                    .expect("residual is nonempty");
                return Ok(Recognition::NotDistanceHereditary { residual_vertices, residual });
            }
        }
    }

    // Re-express the deletions as a forward construction: the survivor
    // becomes vertex 0, deletions replay in reverse as additions 1..n.
    let survivor = (0..n).find(|&v| alive[v]).expect("one vertex survives");
    let mut new_of_old = vec![usize::MAX; n];
    new_of_old[survivor] = 0;
    let mut relabeling = vec![survivor];
    for (i, &(v, _, _)) in deletions.iter().rev().enumerate() {
        new_of_old[v] = i + 1;
        relabeling.push(v);
    }
    let steps: Vec<ConstructionStep> = deletions
        .iter()
        .rev()
        .enumerate()
        .map(|(i, &(_, anchor, kind))| ConstructionStep {
            kind,
            new_vertex: i + 1,
            anchor: new_of_old[anchor],
        })
        .collect();
    let sequence = ConstructionSequence::new(steps).expect("elimination order is valid");
    Ok(Recognition::DistanceHereditary { sequence, relabeling })
}

/// A distance dropped when passing to a connected induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefinitionWitness {
    pub subset: Vec<usize>,
    pub x: usize,
    pub y: usize,
    pub d_subgraph: usize,
    pub d_graph: usize,
}

/// Checks the definition directly: every connected induced subgraph must
/// preserve distances. Exponential in n, so capped at n <= 12. Returns the
/// first violation in subset order, or None if distance-hereditary.
pub fn recognize_bruteforce(g: &Graph) -> Result<Option<DefinitionWitness>, DhError> {
    if !g.is_connected() {
        return Err(DhError::Disconnected);
    }
    let n = g.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(DhError::TooLarge { n, max: BRUTE_FORCE_MAX_N });
    }
    if n <= 2 {
        return Ok(None);
    }
    let adj = adjacency_masks(g);
    let mut d_full = vec![[0u8; BRUTE_FORCE_MAX_N]; n];
    for x in 0..n {
        mask_bfs(&adj, (1u32 << n) - 1, x, &mut d_full[x]);
    }
    for mask in 1u32..(1 << n) {
        if mask.count_ones() < 3 {
            continue;
        }
        if !mask_connected(&adj, mask) {
            continue;
        }
        let mut d_sub = [0u8; BRUTE_FORCE_MAX_N];
        let mut x_bits = mask;
        while x_bits != 0 {
            let x = x_bits.trailing_zeros() as usize;
            x_bits &= x_bits - 1;
            mask_bfs(&adj, mask, x, &mut d_sub);
            let mut y_bits = mask & !((1u32 << (x + 1)) - 1);
            while y_bits != 0 {
                let y = y_bits.trailing_zeros() as usize;
                y_bits &= y_bits - 1;
                if d_sub[y] != d_full[x][y] {
                    let subset = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
                    return Ok(Some(DefinitionWitness {
                        subset,
                        x,
                        y,
                        d_subgraph: d_sub[y] as usize,
                        d_graph: d_full[x][y] as usize,
                    }));
                }
            }
        }
    }
    Ok(None)
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).fold(0u32, |m, w| m | (1 << w)))
        .collect()
}

fn mask_connected(adj: &[u32], mask: u32) -> bool {
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u32 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u32;
        let mut bits = frontier;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            next |= adj[v] & mask;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == mask
}

/// BFS distances restricted to `mask`; entries outside the component keep
/// whatever was in `dist` (callers only read in-component entries).
fn mask_bfs(adj: &[u32], mask: u32, src: usize, dist: &mut [u8; BRUTE_FORCE_MAX_N]) {
    let mut seen = 1u32 << src;
    let mut frontier = seen;
    let mut d = 0u8;
    dist[src] = 0;
    while frontier != 0 {
        d += 1;
        let mut next = 0u32;
        let mut bits = frontier;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            next |= adj[v] & mask;
        }
        frontier = next & !seen;
        seen |= next;
        let mut bits = frontier;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            dist[v] = d;
        }
    }
}

/// Relative likelihood of each step kind in [`random_dh`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepWeights {
    pendant: u32,
    false_twin: u32,
    true_twin: u32,
}

impl StepWeights {
    pub fn new(pendant: u32, false_twin: u32, true_twin: u32) -> Result<Self, DhError> {
        if pendant == 0 && false_twin == 0 && true_twin == 0 {
            return Err(DhError::ZeroWeights);
        }
        Ok(StepWeights { pendant, false_twin, true_twin })
    }

    pub fn as_triple(&self) -> (u32, u32, u32) {
        (self.pendant, self.false_twin, self.true_twin)
    }
}

impl Default for StepWeights {
    fn default() -> Self {
        StepWeights { pendant: 1, false_twin: 1, true_twin: 1 }
    }
}

/// Builds a random distance-hereditary graph by sampling a construction
/// sequence: n-1 steps with kinds drawn by weight and anchors uniform over
/// the existing vertices. Fully determined by (n, seed, weights).
pub fn random_dh(n: usize, seed: u64, weights: StepWeights) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sequence = random_sequence(n, &mut rng, weights);
    build_from_sequence(&sequence)
}

/// The sequence behind [`random_dh`], for callers that want the certificate.
pub fn random_dh_sequence(n: usize, seed: u64, weights: StepWeights) -> ConstructionSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_sequence(n, &mut rng, weights)
}

fn random_sequence(n: usize, rng: &mut ChaCha8Rng, weights: StepWeights) -> ConstructionSequence {
    use rand::distr::weighted::WeightedIndex;
    let (p, f, t) = weights.as_triple();
    let kind_dist = WeightedIndex::new([p, f, t]).expect("weights validated nonzero");
    let kinds = [StepKind::Pendant, StepKind::FalseTwin, StepKind::TrueTwin];
    let steps: Vec<ConstructionStep> = (1..n)
        .map(|new_vertex| {
            let mut kind = kinds[kind_dist.sample(rng)];
            if new_vertex == 1 && kind == StepKind::FalseTwin {
                // a false twin of the isolated base vertex would disconnect
                // the graph; on two vertices pendant and true twin coincide
                kind = StepKind::Pendant;
            }
            let anchor = rng.random_range(0..new_vertex);
            ConstructionStep { kind, new_vertex, anchor }
        })
        .collect();
    ConstructionSequence::new(steps).expect("generated steps are ordered")
}

/// Complete multipartite graph: vertices grouped consecutively into parts,
/// edges exactly between distinct parts. Always distance-hereditary.
pub fn complete_multipartite(part_sizes: &[usize]) -> Result<Graph, DhError> {
    if part_sizes.len() < 2 {
        return Err(DhError::TooFewParts(part_sizes.len()));
    }
    for (i, &s) in part_sizes.iter().enumerate() {
        if s == 0 {
            return Err(DhError::EmptyPart(i));
        }
    }
    let n: usize = part_sizes.iter().sum();
    let mut part_of = vec![0usize; n];
    let mut next = 0;
    for (p, &s) in part_sizes.iter().enumerate() {
        for _ in 0..s {
            part_of[next] = p;
            next += 1;
        }
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if part_of[u] != part_of[v] {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edge_list(n, &edges).expect("multipartite edges are valid"))
}

/// Checks that every cycle of length >= 5 has two crossing chords (chords
/// whose endpoints interleave in the cyclic order). Enumerates all simple
/// cycles, so capped at n <= 12. Returns a violating cycle if any.
pub fn verify_cycle_crossing_chords(g: &Graph) -> Result<Option<Vec<usize>>, DhError> {
    if !g.is_connected() {
        return Err(DhError::Disconnected);
    }
    let n = g.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(DhError::TooLarge { n, max: BRUTE_FORCE_MAX_N });
    }
    let mut witness = None;
    for_each_cycle(g, &mut |cycle| {
        if cycle.len() >= 5 && !has_crossing_chords(g, cycle) {
            witness = Some(cycle.to_vec());
            false
        } else {
            true
        }
    });
    Ok(witness)
}

/// Enumerates every simple cycle (length >= 3) exactly once: the smallest
/// vertex starts the cycle and the two traversal directions are collapsed.
/// The callback returns false to stop early.
fn for_each_cycle(g: &Graph, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    let n = g.n();
    let mut path = Vec::with_capacity(n);
    let mut on_path = vec![false; n];
    fn dfs(
        g: &Graph,
        start: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        f: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        let last = *path.last().expect("path nonempty");
        for w in g.neighbors(last) {
            if w == start && path.len() >= 3 {
                if path[1] < path[path.len() - 1] && !f(path) {
                    return false;
                }
            } else if w > start && !on_path[w] {
                path.push(w);
                on_path[w] = true;
                let keep_going = dfs(g, start, path, on_path, f);
                on_path[w] = false;
                path.pop();
                if !keep_going {
                    return false;
                }
            }
        }
        true
    }
    for start in 0..n {
        path.clear();
        path.push(start);
        on_path[start] = true;
        let keep_going = dfs(g, start, &mut path, &mut on_path, f);
        on_path[start] = false;
        if !keep_going {
            return false;
        }
    }
    true
}

fn has_crossing_chords(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    let mut chords: Vec<(usize, usize)> = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            let adjacent_on_cycle = j == i + 1 || (i == 0 && j == k - 1);
            if !adjacent_on_cycle && g.has_edge(cycle[i], cycle[j]) {
                chords.push((i, j));
            }
        }
    }
    for (a, &(i1, j1)) in chords.iter().enumerate() {
        for &(i2, j2) in &chords[a + 1..] {
            let crossing = (i1 < i2 && i2 < j1 && j1 < j2) || (i2 < i1 && i1 < j2 && j2 < j1);
            if crossing {
                return true;
            }
        }
    }
    false
}

/// An edge inside one BFS level whose endpoints see different
/// neighborhoods one level closer to the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LevelWitness {
    pub source: usize,
    pub u: usize,
    pub v: usize,
}

/// Checks that for every source x and every edge uv inside a BFS level,
/// u and v have identical neighborhoods in the previous level.
pub fn verify_level_neighborhoods(g: &Graph) -> Result<Option<LevelWitness>, DhError> {
    if !g.is_connected() {
        return Err(DhError::Disconnected);
    }
    let n = g.n();
    for x in 0..n {
        let levels = g.bfs_levels(x).expect("source in range");
        for i in 1..levels.levels.len() {
            let level = &levels.levels[i];
            let below: std::collections::BTreeSet<usize> =
                levels.levels[i - 1].iter().copied().collect();
            for (a, &u) in level.iter().enumerate() {
                for &v in &level[a + 1..] {
                    if !g.has_edge(u, v) {
                        continue;
                    }
                    let nu: Vec<usize> = g.neighbors(u).filter(|w| below.contains(w)).collect();
                    let nv: Vec<usize> = g.neighbors(v).filter(|w| below.contains(w)).collect();
                    if nu != nv {
                        return Ok(Some(LevelWitness { source: x, u, v }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// First (lexicographically lowest) pair of vertex-disjoint twin pairs.
pub fn find_disjoint_twin_pairs(g: &Graph) -> Option<((usize, usize), (usize, usize))> {
    let twins = g.find_twins();
    for (a, &(x, y, _)) in twins.iter().enumerate() {
        for &(u, v, _) in &twins[a + 1..] {
            if x != u && x != v && y != u && y != v {
                return Some(((x, y), (u, v)));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_validation() {
        let ok = vec![
            ConstructionStep { kind: StepKind::TrueTwin, new_vertex: 1, anchor: 0 },
            ConstructionStep { kind: StepKind::Pendant, new_vertex: 2, anchor: 1 },
        ];
        assert!(ConstructionSequence::new(ok).is_ok());

        let out_of_order = vec![ConstructionStep { kind: StepKind::Pendant, new_vertex: 2, anchor: 0 }];
        assert_eq!(
            ConstructionSequence::new(out_of_order).unwrap_err(),
            DhError::StepOutOfOrder { index: 0, new_vertex: 2, expected: 1 }
        );

        let bad_anchor = vec![ConstructionStep { kind: StepKind::Pendant, new_vertex: 1, anchor: 1 }];
        assert_eq!(
            ConstructionSequence::new(bad_anchor).unwrap_err(),
            DhError::AnchorNotEarlier { index: 0, anchor: 1, new_vertex: 1 }
        );
    }

    #[test]
    fn build_from_sequence_examples() {
        let k2 = build_from_sequence(
            &ConstructionSequence::new(vec![ConstructionStep {
                kind: StepKind::TrueTwin,
                new_vertex: 1,
                anchor: 0,
            }])
            .unwrap(),
        );
        assert_eq!(k2, Graph::complete(2));

        let k3 = build_from_sequence(
            &ConstructionSequence::new(vec![
                ConstructionStep { kind: StepKind::TrueTwin, new_vertex: 1, anchor: 0 },
                ConstructionStep { kind: StepKind::TrueTwin, new_vertex: 2, anchor: 0 },
            ])
            .unwrap(),
        );
        assert_eq!(k3, Graph::complete(3));

        let c4 = build_from_sequence(
            &ConstructionSequence::new(vec![
                ConstructionStep { kind: StepKind::TrueTwin, new_vertex: 1, anchor: 0 },
                ConstructionStep { kind: StepKind::FalseTwin, new_vertex: 2, anchor: 0 },
                ConstructionStep { kind: StepKind::FalseTwin, new_vertex: 3, anchor: 1 },
            ])
            .unwrap(),
        );
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.has_edge(0, 1) && c4.has_edge(1, 2) && c4.has_edge(2, 3) && c4.has_edge(0, 3));
    }

    #[test]
    fn recognize_pruning_accepts_paths_with_pendant_certificates() {
        let rec = recognize_pruning(&Graph::path(4)).unwrap();
        match rec {
            Recognition::DistanceHereditary { sequence, .. } => {
                assert!(sequence.steps().iter().all(|s| s.kind == StepKind::Pendant));
                assert_eq!(sequence.vertex_count(), 4);
            }
            other => panic!("P4 should be accepted, got {other:?}"),
        }
    }

    #[test]
    fn recognize_pruning_rejects_c5_with_residual_witness() {
        let rec = recognize_pruning(&Graph::cycle(5)).unwrap();
        match rec {
            Recognition::NotDistanceHereditary { residual_vertices, residual } => {
                assert_eq!(residual_vertices, vec![0, 1, 2, 3, 4]);
                assert_eq!(residual, Graph::cycle(5));
            }
            other => panic!("C5 should be rejected, got {other:?}"),
        }
    }

    #[test]
    fn recognize_pruning_accepts_c4_via_false_twins() {
        let rec = recognize_pruning(&Graph::cycle(4)).unwrap();
        match rec {
            Recognition::DistanceHereditary { sequence, relabeling } => {
                let replayed = build_from_sequence(&sequence);
                assert_eq!(replayed.edge_count(), 4);
                // the relabeling maps certificate vertices back onto the input
                for step in sequence.steps() {
                    assert!(relabeling[step.anchor] < 4);
                }
                assert!(sequence.steps().iter().any(|s| s.kind == StepKind::FalseTwin));
            }
            other => panic!("C4 should be accepted, got {other:?}"),
        }
    }

    #[test]
    fn recognize_pruning_rejects_disconnected_input() {
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(recognize_pruning(&g).unwrap_err(), DhError::Disconnected);
    }

    #[test]
    fn bruteforce_witness_on_c5() {
        let w = recognize_bruteforce(&Graph::cycle(5)).unwrap().unwrap();
        assert_eq!(w.subset, vec![0, 1, 2, 3]);
        assert_eq!((w.x, w.y), (0, 3));
        assert_eq!((w.d_subgraph, w.d_graph), (3, 2));
    }

    #[test]
    fn bruteforce_accepts_trees_and_rejects_long_cycles() {
        for n in 2..=7 {
            assert!(recognize_bruteforce(&Graph::path(n)).unwrap().is_none());
            assert!(recognize_bruteforce(&Graph::star(n)).unwrap().is_none());
        }
        assert!(recognize_bruteforce(&Graph::cycle(6)).unwrap().is_some());
        assert!(recognize_bruteforce(&Graph::cycle(4)).unwrap().is_none());
    }

    #[test]
    fn bruteforce_guards() {
        let g = Graph::path(13);
        assert_eq!(
            recognize_bruteforce(&g).unwrap_err(),
            DhError::TooLarge { n: 13, max: 12 }
        );
        let disc = Graph::from_edge_list(3, &[(0, 1)]).unwrap();
        assert_eq!(recognize_bruteforce(&disc).unwrap_err(), DhError::Disconnected);
    }

    #[test]
    fn random_dh_is_deterministic_and_recognized() {
        let w = StepWeights::default();
        let a = random_dh(20, 7, w);
        let b = random_dh(20, 7, w);
        assert_eq!(a, b);
        for seed in 0..20 {
            let g = random_dh(20, seed, w);
            assert!(g.is_connected());
            assert!(recognize_pruning(&g).unwrap().is_distance_hereditary());
        }
        assert_eq!(random_dh(1, 3, w).n(), 1);
    }

    #[test]
    fn step_weights_must_be_nonzero() {
        assert_eq!(StepWeights::new(0, 0, 0).unwrap_err(), DhError::ZeroWeights);
        assert!(StepWeights::new(0, 1, 0).is_ok());
    }

    #[test]
    fn complete_multipartite_examples() {
        assert_eq!(complete_multipartite(&[1, 1, 1]).unwrap(), Graph::complete(3));

        let k22 = complete_multipartite(&[2, 2]).unwrap();
        assert_eq!(k22.edge_count(), 4);
        assert!(recognize_bruteforce(&k22).unwrap().is_none());

        let big = complete_multipartite(&[4, 4, 4, 4]).unwrap();
        assert_eq!(big.n(), 16);
        assert!(recognize_pruning(&big).unwrap().is_distance_hereditary());

        assert_eq!(complete_multipartite(&[5]).unwrap_err(), DhError::TooFewParts(1));
        assert_eq!(complete_multipartite(&[2, 0]).unwrap_err(), DhError::EmptyPart(1));
    }

    #[test]
    fn crossing_chords_examples() {
        // chordless C5 is its own witness
        let w = verify_cycle_crossing_chords(&Graph::cycle(5)).unwrap();
        assert_eq!(w, Some(vec![0, 1, 2, 3, 4]));

        // no cycle of length >= 5: vacuously fine
        assert!(verify_cycle_crossing_chords(&Graph::cycle(4)).unwrap().is_none());
        assert!(verify_cycle_crossing_chords(&Graph::path(6)).unwrap().is_none());

        // house graph: C5 plus a single chord cannot cross
        let house = Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 4)]).unwrap();
        assert!(verify_cycle_crossing_chords(&house).unwrap().is_some());

        // K5 is distance-hereditary and every long cycle is heavily chorded
        assert!(verify_cycle_crossing_chords(&Graph::complete(5)).unwrap().is_none());
    }

    #[test]
    fn level_neighborhood_examples() {
        assert!(verify_level_neighborhoods(&Graph::cycle(4)).unwrap().is_none());
        assert!(verify_level_neighborhoods(&Graph::complete(4)).unwrap().is_none());
        let w = verify_level_neighborhoods(&Graph::cycle(5)).unwrap().unwrap();
        assert_eq!(w.source, 0);
        assert_eq!((w.u, w.v), (2, 3));
    }

    #[test]
    fn disjoint_twin_pair_examples() {
        assert_eq!(find_disjoint_twin_pairs(&Graph::cycle(4)), Some(((0, 2), (1, 3))));
        assert_eq!(find_disjoint_twin_pairs(&Graph::complete(4)), Some(((0, 1), (2, 3))));
        assert_eq!(find_disjoint_twin_pairs(&Graph::path(4)), None);
    }

    #[test]
    fn cycle_enumeration_counts_are_exact() {
        // C5: one cycle; K4: 4 triangles + 3 squares = 7
        let mut count = 0;
        for_each_cycle(&Graph::cycle(5), &mut |_| {
            count += 1;
            true
        });
        assert_eq!(count, 1);

        let mut count = 0;
        for_each_cycle(&Graph::complete(4), &mut |_| {
            count += 1;
            true
        });
        assert_eq!(count, 7);
    }
}
