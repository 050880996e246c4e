//! Undirected simple graphs over item vertices, plus every structural
//! routine needed to classify a graph for the connectivity analysis.
//!
//! Vertex sets are 64-bit masks, so graphs are limited to 64 vertices.
//! Everything here is exact and exhaustive at that scale.

mod bipolar;
mod blocks;
mod connectivity;
pub mod enumerate;
mod linkage;
mod tree;

use std::fmt;

pub use bipolar::{bipolar_ordering, is_bipolar_ordering};
pub use blocks::{block_decomposition, BlockDecomposition};
pub use connectivity::{
    components_after_removal, delta_formula, delta_pair, max_components_one_removal,
    max_components_two_removals, vertex_connectivity, DeltaCase, DeltaPair,
};
pub use linkage::{is_two_linked, is_two_linked_pairs};
pub use tree::{spanning_tree, RootedTree};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooLarge(usize),
    #[error("vertex {vertex} out of range for a graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("operation needs at least {needed} vertices, graph has {actual}")]
    TooFewVertices { needed: usize, actual: usize },
    #[error("vertices must be pairwise distinct")]
    NonDistinctVertices,
}

/// A set of vertices stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_vertices(vs: impl IntoIterator<Item = usize>) -> Self {
        vs.into_iter().fold(Self::EMPTY, |s, v| s.with(v))
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest vertex in the set.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Elements strictly greater than `v`.
    #[inline]
    pub fn above(self, v: usize) -> Self {
        VertexSet(self.0 & u64::MAX.checked_shl(v as u32 + 1).unwrap_or(0))
    }

    /// Vertices in ascending order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_vertices(iter)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Connected undirected simple graph on vertices `0..vertex_count`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertex_count", &self.vertex_count())
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and disconnected
    /// inputs.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let g = Self::build(vertex_count, edges)?;
        if !g.is_connected_subset(g.vertices()) {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    fn build(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::Empty);
        }
        if vertex_count > MAX_VERTICES {
            return Err(GraphError::TooLarge(vertex_count));
        }
        let mut adj = vec![VertexSet::EMPTY; vertex_count];
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if adj[a].contains(b) {
                return Err(GraphError::DuplicateEdge(a.min(b), a.max(b)));
            }
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Ok(Graph { adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Edges as `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for a in 0..self.vertex_count() {
            for b in self.adj[a].iter().filter(|&b| b > a) {
                out.push((a, b));
            }
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.vertex_count()
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }

    pub(crate) fn check_set(&self, s: VertexSet) -> Result<(), GraphError> {
        match s.difference(self.vertices()).first() {
            None => Ok(()),
            Some(vertex) => Err(GraphError::VertexOutOfRange {
                vertex,
                vertex_count: self.vertex_count(),
            }),
        }
    }

    /// Vertices of `within` reachable from `start` inside `within`.
    pub fn reach_within(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.adj[v]);
            }
            frontier = next.intersection(within).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// True iff the subgraph induced by `s` is connected. Empty and singleton
    /// sets count as connected.
    #[inline]
    pub fn is_connected_subset(&self, s: VertexSet) -> bool {
        match s.first() {
            None => true,
            Some(v) => self.reach_within(v, s) == s,
        }
    }

    /// Checked variant of [`Graph::is_connected_subset`].
    pub fn try_is_connected_subset(&self, s: VertexSet) -> Result<bool, GraphError> {
        self.check_set(s)?;
        Ok(self.is_connected_subset(s))
    }

    /// Connected components of the subgraph induced by `within`, each
    /// listed in order of its smallest vertex.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut left = within;
        while let Some(v) = left.first() {
            let c = self.reach_within(v, left);
            left = left.difference(c);
            out.push(c);
        }
        out
    }

    /// The subgraph induced by `s`, relabelled to `0..|s|` in ascending
    /// order, together with the map from new to old labels.
    pub fn induced(&self, s: VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        self.check_set(s)?;
        let map = s.to_vec();
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in map.iter().enumerate() {
            for w in self.adj[v].intersection(s) {
                if index[w] > i {
                    edges.push((i, index[w]));
                }
            }
        }
        Ok((Graph::new(map.len(), &edges)?, map))
    }

    /// Proper 2-colouring by breadth-first search from vertex 0, if the
    /// graph is bipartite. `true` marks the side of vertex 0.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.vertex_count();
        let mut color: Vec<Option<bool>> = vec![None; n];
        color[0] = Some(true);
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let c = color[v].unwrap();
            for w in self.adj[v] {
                match color[w] {
                    None => {
                        color[w] = Some(!c);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == c => return None,
                    Some(_) => {}
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    // Named constructors.

    pub fn path(m: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..m).map(|i| (i - 1, i)).collect();
        Graph::new(m, &edges)
    }

    /// Cycle `0-1-..-(m-1)-0`; needs `m >= 3`.
    pub fn cycle(m: usize) -> Result<Self, GraphError> {
        if m < 3 {
            return Err(GraphError::TooFewVertices {
                needed: 3,
                actual: m,
            });
        }
        let mut edges: Vec<_> = (1..m).map(|i| (i - 1, i)).collect();
        edges.push((0, m - 1));
        Graph::new(m, &edges)
    }

    /// Star with centre 0 and leaves `1..m`.
    pub fn star(m: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..m).map(|i| (0, i)).collect();
        Graph::new(m, &edges)
    }

    pub fn complete(m: usize) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                edges.push((a, b));
            }
        }
        Graph::new(m, &edges)
    }

    /// `K_m` with the matching `{0,1}, {2,3}, .., {2k-2, 2k-1}` removed.
    pub fn complete_minus_matching(m: usize, k: usize) -> Result<Self, GraphError> {
        if 2 * k > m {
            return Err(GraphError::TooFewVertices {
                needed: 2 * k,
                actual: m,
            });
        }
        let mut edges = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                if !(a % 2 == 0 && b == a + 1 && b < 2 * k) {
                    edges.push((a, b));
                }
            }
        }
        Graph::new(m, &edges)
    }

    /// `K_{x,y}` with sides `0..x` and `x..x+y`.
    pub fn complete_bipartite(x: usize, y: usize) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for a in 0..x {
            for b in x..x + y {
                edges.push((a, b));
            }
        }
        Graph::new(x + y, &edges)
    }

    /// Centre 0 with `legs` paths of `leg_length` vertices each.
    pub fn spider(legs: usize, leg_length: usize) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        let mut next = 1;
        for _ in 0..legs {
            let mut prev = 0;
            for _ in 0..leg_length {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Graph::new(next, &edges)
    }
}
