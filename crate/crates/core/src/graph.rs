//! Undirected simple graphs on dense vertex indices `0..n`, with the
//! shortest-path machinery (BFS levels, all-pairs distances, connectivity,
//! twins, triangles) the rest of the crate builds on.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::metric::FiniteMetric;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("({u}, {v}) is not an edge")]
    NotAnEdge { u: usize, v: usize },
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("2-connectivity is only defined here for n >= 3 (got n = {0})")]
    TooSmallForTwoConnectivity(usize),
    #[error("metric space needs at least 2 vertices (got {0})")]
    MetricTooSmall(usize),
}

/// Whether a twin pair is adjacent (true twins) or not (false twins).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TwinKind {
    True,
    False,
}

/// An undirected simple graph. Vertices are `0..n`; adjacency is kept as
/// sorted sets so neighborhood comparisons are order-independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
}

/// BFS levels from a source: `levels[i]` holds the vertices at distance
/// exactly `i`, `unreachable` whatever the source cannot see.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsLevels {
    pub source: usize,
    pub levels: Vec<Vec<usize>>,
    pub unreachable: Vec<usize>,
}

impl BfsLevels {
    /// Largest distance reached from the source.
    pub fn eccentricity(&self) -> usize {
        self.levels.len() - 1
    }

    /// Distance from the source to `v`, if reachable.
    pub fn distance_to(&self, v: usize) -> Option<usize> {
        self.levels
            .iter()
            .position(|level| level.binary_search(&v).is_ok())
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse silently;
    /// self-loops and out-of-range endpoints are errors.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut adj = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { n, adj })
    }

    /// Path graph 0-1-...-(n-1).
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n.max(1), &edges).expect("path edges are valid")
    }

    /// Cycle graph on n >= 3 vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).expect("cycle edges are valid")
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Graph::from_edge_list(n.max(1), &edges).expect("complete edges are valid")
    }

    /// Star with center 0 and n-1 leaves.
    pub fn star(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Graph::from_edge_list(n.max(1), &edges).expect("star edges are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].contains(&v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    /// All edges (u, v) with u < v, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// BFS level sets from `x`: `levels[i]` is the set of vertices at
    /// distance exactly `i`.
    pub fn bfs_levels(&self, x: usize) -> Result<BfsLevels, GraphError> {
        self.check_vertex(x)?;
        let mut dist = vec![usize::MAX; self.n];
        dist[x] = 0;
        let mut frontier = vec![x];
        let mut levels = vec![vec![x]];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = levels.len();
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            levels.push(next.clone());
            frontier = next;
        }
        let unreachable = (0..self.n).filter(|&v| dist[v] == usize::MAX).collect();
        Ok(BfsLevels { source: x, levels, unreachable })
    }

    /// Shortest-path distances from `x` (usize::MAX for unreachable).
    pub(crate) fn bfs_distances(&self, x: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[x] = 0;
        let mut queue = std::collections::VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest-path metric of a connected graph on at least 2 vertices.
    pub fn all_pairs_distances(&self) -> Result<FiniteMetric, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        if self.n < 2 {
            return Err(GraphError::MetricTooSmall(self.n));
        }
        let mut d = vec![0u64; self.n * self.n];
        for x in 0..self.n {
            for (v, &dv) in self.bfs_distances(x).iter().enumerate() {
                d[x * self.n + v] = dv as u64;
            }
        }
        FiniteMetric::from_graph_distances(self.n, d)
            .map_err(|_| GraphError::MetricTooSmall(self.n))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let dist = self.bfs_distances(0);
        dist.iter().all(|&d| d != usize::MAX)
    }

    /// Cut vertices (articulation points), in increasing order.
    pub fn cut_vertices(&self) -> Vec<usize> {
        // Iterative Tarjan lowpoint computation over each DFS tree.
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut parent = vec![usize::MAX; n];
        let mut is_cut = vec![false; n];
        let nbrs: Vec<Vec<usize>> = (0..n).map(|v| self.adj[v].iter().copied().collect()).collect();
        let mut cursor = vec![0usize; n];
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            let mut root_children = 0;
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut stack = vec![root];
            while let Some(&u) = stack.last() {
                if cursor[u] < nbrs[u].len() {
                    let w = nbrs[u][cursor[u]];
                    cursor[u] += 1;
                    if disc[w] == usize::MAX {
                        parent[w] = u;
                        if u == root {
                            root_children += 1;
                        }
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push(w);
                    } else if w != parent[u] {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&p) = stack.last() {
                        low[p] = low[p].min(low[u]);
                        if p != root && low[u] >= disc[p] {
                            is_cut[p] = true;
                        }
                    }
                }
            }
            if root_children >= 2 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    /// Connected with no cut vertex. Only defined for n >= 3.
    pub fn is_two_connected(&self) -> Result<bool, GraphError> {
        if self.n < 3 {
            return Err(GraphError::TooSmallForTwoConnectivity(self.n));
        }
        Ok(self.is_connected() && self.cut_vertices().is_empty())
    }

    /// All unordered twin pairs: u, v with N(u) - {v} = N(v) - {u}.
    /// Pairs come out sorted lexicographically.
    pub fn find_twins(&self) -> Vec<(usize, usize, TwinKind)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if let Some(kind) = self.twin_kind(u, v) {
                    out.push((u, v, kind));
                }
            }
        }
        out
    }

    /// Twin relation for a single pair.
    pub fn twin_kind(&self, u: usize, v: usize) -> Option<TwinKind> {
        let nu = self.adj[u].iter().copied().filter(|&w| w != v);
        let nv = self.adj[v].iter().copied().filter(|&w| w != u);
        if nu.eq(nv) {
            Some(if self.has_edge(u, v) { TwinKind::True } else { TwinKind::False })
        } else {
            None
        }
    }

    /// True iff the edge uv has a common neighbor.
    pub fn edge_in_triangle(&self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge { u, v });
        }
        Ok(self.adj[u].intersection(&self.adj[v]).next().is_some())
    }

    /// Subgraph induced by `s`, with the old-to-new index map. New indices
    /// follow the sorted order of `s`.
    pub fn induced_subgraph(
        &self,
        s: &[usize],
    ) -> Result<(Graph, std::collections::BTreeMap<usize, usize>), GraphError> {
        if s.is_empty() {
            return Err(GraphError::EmptySubset);
        }
        let mut sorted: Vec<usize> = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &v in &sorted {
            self.check_vertex(v)?;
        }
        let remap: std::collections::BTreeMap<usize, usize> =
            sorted.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let mut edges = Vec::new();
        for (&old_u, &new_u) in &remap {
            for &w in &self.adj[old_u] {
                if let Some(&new_w) = remap.get(&w) {
                    if new_u < new_w {
                        edges.push((new_u, new_w));
                    }
                }
            }
        }
        let g = Graph::from_edge_list(sorted.len(), &edges)?;
        Ok((g, remap))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: shortest distance by enumerating all simple paths.
    fn oracle_distance(g: &Graph, s: usize, t: usize) -> Option<usize> {
        fn dfs(g: &Graph, cur: usize, t: usize, seen: &mut Vec<bool>, len: usize, best: &mut Option<usize>) {
            if cur == t {
                *best = Some(best.map_or(len, |b: usize| b.min(len)));
                return;
            }
            for w in g.neighbors(cur) {
                if !seen[w] {
                    seen[w] = true;
                    dfs(g, w, t, seen, len + 1, best);
                    seen[w] = false;
                }
            }
        }
        let mut best = None;
        let mut seen = vec![false; g.n()];
        seen[s] = true;
        dfs(g, s, t, &mut seen, 0, &mut best);
        best
    }

    #[test]
    fn from_edge_list_builds_p3() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn from_edge_list_single_vertex() {
        let g = Graph::from_edge_list(1, &[]).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn from_edge_list_collapses_duplicates() {
        let g = Graph::from_edge_list(4, &[(0, 1), (1, 0), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g, Graph::cycle(4));
    }

    #[test]
    fn from_edge_list_rejects_bad_input() {
        assert_eq!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::from_edge_list(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::from_edge_list(0, &[]), Err(GraphError::NoVertices));
    }

    #[test]
    fn bfs_levels_on_path_and_complete() {
        let levels = Graph::path(3).bfs_levels(0).unwrap();
        assert_eq!(levels.levels, vec![vec![0], vec![1], vec![2]]);
        assert!(levels.unreachable.is_empty());
        assert_eq!(levels.eccentricity(), 2);

        let levels = Graph::complete(3).bfs_levels(0).unwrap();
        assert_eq!(levels.levels, vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn bfs_levels_on_c5_match_path_enumeration_oracle() {
        let g = Graph::cycle(5);
        let levels = g.bfs_levels(0).unwrap();
        assert_eq!(levels.levels, vec![vec![0], vec![1, 4], vec![2, 3]]);
        for v in 0..5 {
            assert_eq!(levels.distance_to(v), oracle_distance(&g, 0, v));
        }
    }

    #[test]
    fn bfs_levels_partition_and_parent_property() {
        let g = Graph::from_edge_list(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (5, 6)]).unwrap();
        for x in 0..7 {
            let levels = g.bfs_levels(x).unwrap();
            let mut all: Vec<usize> = levels.levels.iter().flatten().copied().collect();
            all.extend(&levels.unreachable);
            all.sort_unstable();
            assert_eq!(all, (0..7).collect::<Vec<_>>());
            for (i, level) in levels.levels.iter().enumerate().skip(1) {
                for &v in level {
                    assert!(g.neighbors(v).any(|w| levels.levels[i - 1].contains(&w)));
                }
            }
        }
    }

    #[test]
    fn all_pairs_distances_examples() {
        let m = Graph::path(3).all_pairs_distances().unwrap();
        assert_eq!(m.distance(0, 2), 2);
        assert_eq!(m.distance(0, 1), 1);
        assert_eq!(m.distance(1, 2), 1);

        let m = Graph::complete(4).all_pairs_distances().unwrap();
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(m.distance(u, v), u64::from(u != v));
            }
        }

        let g = Graph::cycle(6);
        let m = g.all_pairs_distances().unwrap();
        assert_eq!(m.distance(0, 3), 3);
        for u in 0..6 {
            for v in 0..6 {
                assert_eq!(m.distance(u, v) as usize, oracle_distance(&g, u, v).unwrap());
            }
        }
    }

    #[test]
    fn all_pairs_distances_rejects_disconnected() {
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.all_pairs_distances().unwrap_err(), GraphError::Disconnected);
    }

    #[test]
    fn adjacent_vertices_have_close_distances() {
        let g = Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 5)]).unwrap();
        let m = g.all_pairs_distances().unwrap();
        for (u, v) in g.edges() {
            for w in 0..6 {
                let du = m.distance(u, w) as i64;
                let dv = m.distance(v, w) as i64;
                assert!((du - dv).abs() <= 1);
            }
        }
    }

    #[test]
    fn connectivity_examples() {
        let p3 = Graph::path(3);
        assert!(p3.is_connected());
        assert_eq!(p3.cut_vertices(), vec![1]);
        assert!(!p3.is_two_connected().unwrap());

        assert!(Graph::cycle(4).is_two_connected().unwrap());

        let two_edges = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_connected());
    }

    #[test]
    fn two_connectivity_rejects_tiny_graphs() {
        assert_eq!(
            Graph::from_edge_list(2, &[(0, 1)]).unwrap().is_two_connected(),
            Err(GraphError::TooSmallForTwoConnectivity(2))
        );
    }

    #[test]
    fn cut_vertices_on_two_triangles_sharing_a_vertex() {
        let g = Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(g.cut_vertices(), vec![2]);
    }

    #[test]
    fn twins_examples() {
        let twins = Graph::complete(3).find_twins();
        assert_eq!(
            twins,
            vec![
                (0, 1, TwinKind::True),
                (0, 2, TwinKind::True),
                (1, 2, TwinKind::True)
            ]
        );

        assert_eq!(Graph::path(3).find_twins(), vec![(0, 2, TwinKind::False)]);

        // exhaustive pair oracle on C5: no pair has matching punctured neighborhoods
        let c5 = Graph::cycle(5);
        for u in 0..5 {
            for v in (u + 1)..5 {
                let nu: BTreeSet<_> = c5.neighbors(u).filter(|&w| w != v).collect();
                let nv: BTreeSet<_> = c5.neighbors(v).filter(|&w| w != u).collect();
                assert_ne!(nu, nv);
            }
        }
        assert!(c5.find_twins().is_empty());
    }

    #[test]
    fn edge_in_triangle_examples() {
        assert!(Graph::complete(3).edge_in_triangle(0, 1).unwrap());
        assert!(!Graph::cycle(4).edge_in_triangle(0, 1).unwrap());

        // K4 minus the edge (2,3): every remaining edge keeps a common neighbor
        let g = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        for (u, v) in g.edges().collect::<Vec<_>>() {
            assert!(g.edge_in_triangle(u, v).unwrap(), "edge ({u},{v})");
        }

        assert_eq!(
            Graph::cycle(4).edge_in_triangle(0, 2),
            Err(GraphError::NotAnEdge { u: 0, v: 2 })
        );
    }

    #[test]
    fn induced_subgraph_examples() {
        let (p4, _) = Graph::cycle(5).induced_subgraph(&[0, 1, 2, 3]).unwrap();
        assert_eq!(p4.edge_count(), 3);
        assert_eq!(p4, Graph::path(4));

        let (k3, map) = Graph::complete(4).induced_subgraph(&[1, 2, 3]).unwrap();
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(map[&1], 0);
        assert_eq!(map[&3], 2);

        // alternate vertices of C6 leave no edges
        let (g, _) = Graph::cycle(6).induced_subgraph(&[0, 2, 4]).unwrap();
        assert_eq!(g.edge_count(), 0);

        assert_eq!(
            Graph::cycle(6).induced_subgraph(&[]).unwrap_err(),
            GraphError::EmptySubset
        );
    }

    #[test]
    fn induced_subgraph_composes() {
        let g = Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)]).unwrap();
        let s = [0, 1, 3, 4, 5];
        let t_in_g = [1, 4, 5];
        let (gs, map_s) = g.induced_subgraph(&s).unwrap();
        let t_in_gs: Vec<usize> = t_in_g.iter().map(|v| map_s[v]).collect();
        let (via_s, _) = gs.induced_subgraph(&t_in_gs).unwrap();
        let (direct, _) = g.induced_subgraph(&t_in_g).unwrap();
        assert_eq!(via_s, direct);
    }
}
