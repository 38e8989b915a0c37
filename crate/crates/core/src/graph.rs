//! Immutable simple undirected graphs on dense vertex indices `0..n`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// A finite simple undirected graph with at least one vertex.
///
/// Neighbor lists are sorted ascending; a bitset copy of every
/// neighborhood is kept alongside for the forcing engine.
#[derive(Clone)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    nbr_sets: Vec<VertexSet>,
    m: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges())
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSummary {
    pub delta_min: usize,
    pub delta_max: usize,
    pub degree_sequence: Vec<usize>,
}

impl DegreeSummary {
    pub fn is_regular(&self) -> bool {
        self.delta_min == self.delta_max
    }
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, repeated
    /// pairs and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut nbr_sets = vec![VertexSet::new(n); n];
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !nbr_sets[u].insert(v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            nbr_sets[v].insert(u);
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        Ok(Self {
            adj,
            nbr_sets,
            m: edges.len(),
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn neighbor_set(&self, v: usize) -> &VertexSet {
        &self.nbr_sets[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.nbr_sets[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    pub fn degrees(&self) -> DegreeSummary {
        let mut degree_sequence: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        degree_sequence.sort_unstable();
        DegreeSummary {
            delta_min: degree_sequence[0],
            delta_max: degree_sequence[degree_sequence.len() - 1],
            degree_sequence,
        }
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Vertices reachable from `start` while avoiding `removed`.
    fn reach(&self, start: usize, removed: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::new(self.n());
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !removed.contains(w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.reach(0, &VertexSet::new(self.n())).len() == self.n()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let none = VertexSet::new(self.n());
        let mut assigned = VertexSet::new(self.n());
        let mut out = Vec::new();
        for v in 0..self.n() {
            if assigned.contains(v) {
                continue;
            }
            let comp = self.reach(v, &none);
            assigned.union_with(&comp);
            out.push(comp.to_vec());
        }
        out
    }

    /// Subgraph induced by `vertices` (sorted), relabelled to `0..len`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(vertices.len(), &edges)
    }

    /// True when deleting any set of fewer than `k` vertices leaves a
    /// connected graph. Requires `n > k`.
    ///
    /// Only removal sets of size exactly `k - 1` are enumerated: a smaller
    /// separating set extends to one of that size, since at least two
    /// vertices survive and they can be kept in different components.
    pub fn is_k_connected(&self, k: usize) -> Result<bool> {
        if k == 0 {
            return Err(Error::InvalidK);
        }
        let n = self.n();
        if n <= k {
            return Err(Error::TooFewVertices { n, k });
        }
        if !self.is_connected() {
            return Ok(false);
        }
        let mut removed = VertexSet::new(n);
        Ok(self.survives_removals(k - 1, 0, &mut removed))
    }

    fn survives_removals(&self, remaining: usize, from: usize, removed: &mut VertexSet) -> bool {
        if remaining == 0 {
            let start = (0..self.n())
                .find(|&v| !removed.contains(v))
                .expect("n > k");
            let left = self.n() - removed.len();
            return self.reach(start, removed).len() == left;
        }
        for v in from..self.n() {
            removed.insert(v);
            let ok = self.survives_removals(remaining - 1, v + 1, removed);
            removed.remove(v);
            if !ok {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn build_small_graphs() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.m(), 1);
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            (0..3).map(|v| p3.degree(v)).collect::<Vec<_>>(),
            vec![1, 2, 1]
        );
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (0, 1)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert_eq!(Graph::from_edges(3, &[(2, 2)]), Err(Error::SelfLoop(2)));
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::from_edges(0, &[]), Err(Error::EmptyGraph));
    }

    #[test]
    fn degree_summaries() {
        let c5 = cycle(5).degrees();
        assert_eq!((c5.delta_min, c5.delta_max), (2, 2));
        let k5 = complete(5).degrees();
        assert_eq!((k5.delta_min, k5.delta_max), (4, 4));
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let s = star.degrees();
        assert_eq!((s.delta_min, s.delta_max), (1, 4));
        assert_eq!(s.degree_sequence, vec![1, 1, 1, 1, 4]);
    }

    #[test]
    fn connectivity() {
        assert!(path(4).is_connected());
        assert!(!Graph::from_edges(4, &[(0, 1), (2, 3)])
            .unwrap()
            .is_connected());
        assert!(Graph::from_edges(1, &[]).unwrap().is_connected());
        assert_eq!(
            Graph::from_edges(4, &[(0, 1), (2, 3)])
                .unwrap()
                .components(),
            vec![vec![0, 1], vec![2, 3]]
        );
    }

    #[test]
    fn k_connectivity() {
        assert_eq!(cycle(5).is_k_connected(2), Ok(true));
        assert_eq!(path(4).is_k_connected(2), Ok(false));
        assert_eq!(complete(4).is_k_connected(3), Ok(true));
        assert_eq!(cycle(5).is_k_connected(3), Ok(false));
        assert_eq!(
            complete(3).is_k_connected(3),
            Err(Error::TooFewVertices { n: 3, k: 3 })
        );
    }

    #[test]
    fn edge_and_induced_subgraph() {
        let g = cycle(5);
        assert_eq!(g.edges(), vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]);
        let sub = g.induced_subgraph(&[1, 2, 3]).unwrap();
        assert_eq!(sub.edges(), vec![(0, 1), (1, 2)]);
    }

    use crate::generators::FamilySpec;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn adjacency_and_connectivity_laws(n in 2usize..=10, p in 0.0f64..1.0, seed in any::<u64>()) {
            // G(n, p) without the connectivity resampling
            let mut rng = crate::rng::SplitMix64::new(seed);
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.unit() < p)
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            for u in 0..n {
                for &v in g.neighbors(u) {
                    prop_assert!(g.has_edge(v, u));
                }
            }
            prop_assert_eq!(2 * g.m(), (0..n).map(|v| g.degree(v)).sum::<usize>());
            prop_assert_eq!(g.is_k_connected(1).unwrap(), g.is_connected());
            let levels: Vec<bool> = (1..n).map(|k| g.is_k_connected(k).unwrap()).collect();
            // true at k implies true below k
            prop_assert!(levels.windows(2).all(|w| w[0] || !w[1]));
        }
    }

    #[test]
    fn known_connectivities() {
        let q3 = FamilySpec::Hypercube { dim: 3 }.generate().unwrap();
        assert_eq!(q3.is_k_connected(3), Ok(true));
        assert_eq!(q3.is_k_connected(4), Ok(false));
        let p = FamilySpec::Petersen.generate().unwrap();
        assert_eq!(p.is_k_connected(3), Ok(true));
    }
}
