//! Exhaustive enumeration of small labeled connected graphs, and the
//! permutation-minimal canonical form used to deduplicate isomorphs.

use itertools::Itertools;

use crate::graph::Graph;
use crate::lab::LabError;

/// Labeled enumeration walks all 2^C(n,2) edge subsets; 7 is the last size
/// where that stays in the millions.
pub const MAX_ENUMERATION_N: usize = 7;

/// Canonicalization tries all n! vertex permutations.
pub const MAX_CANONICAL_N: usize = 8;

/// Number of vertex pairs C(n,2): the width of an edge mask.
pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Bit position of the pair (u, v), u < v, in row-major upper-triangle
/// order: (0,1), (0,2), ..., (0,n-1), (1,2), ...
#[inline]
pub(crate) fn pair_bit(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// Decodes an edge mask into the graph it selects.
pub fn graph_from_edge_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::with_capacity(mask.count_ones() as usize);
    let mut bit = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if mask & (1u64 << bit) != 0 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_edge_list(n, &edges).expect("mask edges are valid")
}

/// Adjacency-as-bitmask connectivity test, used to skip graph construction
/// for the disconnected masks of a sweep.
pub(crate) fn mask_is_connected(n: usize, mask: u64) -> bool {
    let mut adj = [0u16; MAX_ENUMERATION_N + 1];
    let mut bit = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if mask & (1u64 << bit) != 0 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            bit += 1;
        }
    }
    let full = (1u16 << n) - 1;
    let mut seen = 1u16;
    let mut frontier = 1u16;
    while frontier != 0 {
        let mut next = 0u16;
        let mut bits = frontier;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == full
}

/// Streams every labeled connected simple graph on n vertices, for
/// 2 <= n <= 7, by walking all edge subsets in mask order.
pub fn enumerate_connected_graphs(n: usize) -> Result<ConnectedGraphs, LabError> {
    if !(2..=MAX_ENUMERATION_N).contains(&n) {
        return Err(LabError::EnumerationRange(n));
    }
    Ok(ConnectedGraphs { n, next: 0, end: 1u64 << pair_count(n) })
}

pub struct ConnectedGraphs {
    n: usize,
    next: u64,
    end: u64,
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            if mask_is_connected(self.n, mask) {
                return Some(graph_from_edge_mask(self.n, mask));
            }
        }
        None
    }
}

/// Canonical form: the minimum adjacency bitstring over all vertex
/// permutations. Equal keys mean isomorphic graphs. Capped at n <= 8
/// (8! permutations, 28-bit keys).
pub fn canonical_form(g: &Graph) -> Result<u64, LabError> {
    let n = g.n();
    if n > MAX_CANONICAL_N {
        return Err(LabError::CanonicalRange(n));
    }
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    Ok(canonical_key(n, &edges, &perms))
}

/// The minimum over the supplied permutations; sweeps precompute the
/// permutation table once per n.
pub(crate) fn canonical_key(n: usize, edges: &[(usize, usize)], perms: &[Vec<usize>]) -> u64 {
    let mut best = u64::MAX;
    for perm in perms {
        let mut key = 0u64;
        for &(u, v) in edges {
            let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
            key |= 1u64 << pair_bit(n, a, b);
        }
        if key < best {
            best = key;
        }
    }
    best
}
