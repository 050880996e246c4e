use std::collections::VecDeque;

use super::{Graph, GraphError, VertexSet};

/// Vertex connectivity: the least number of vertices whose removal leaves a
/// disconnected graph. `K_r` has connectivity `r - 1`.
///
/// Computed as the minimum, over non-adjacent pairs, of the number of
/// internally vertex-disjoint paths between them.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut best = n.saturating_sub(1);
    for s in 0..n {
        for t in s + 1..n {
            if !g.has_edge(s, t) {
                best = best.min(local_connectivity(g, s, t, best));
            }
        }
    }
    best
}

/// Number of internally disjoint `s`-`t` paths for non-adjacent `s`, `t`,
/// stopping early once `cap` paths are found.
fn local_connectivity(g: &Graph, s: usize, t: usize, cap: usize) -> usize {
    // Split every vertex v into v_in = 2v and v_out = 2v + 1.
    let n = g.vertex_count();
    let nodes = 2 * n;
    let big = n as i32 + 1;
    let mut cap_m = vec![vec![0i32; nodes]; nodes];
    for v in 0..n {
        cap_m[2 * v][2 * v + 1] = if v == s || v == t { big } else { 1 };
        for w in g.neighbors(v) {
            cap_m[2 * v + 1][2 * w] = big;
        }
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut flow = 0;
    while flow < cap {
        let mut prev = vec![usize::MAX; nodes];
        prev[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for y in 0..nodes {
                if prev[y] == usize::MAX && cap_m[x][y] > 0 {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[sink] == usize::MAX {
            break;
        }
        let mut y = sink;
        while y != source {
            let x = prev[y];
            cap_m[x][y] -= 1;
            cap_m[y][x] += 1;
            y = x;
        }
        flow += 1;
    }
    flow
}

/// Number of connected components left after deleting `removed`.
pub fn components_after_removal(g: &Graph, removed: VertexSet) -> Result<usize, GraphError> {
    g.check_set(removed)?;
    Ok(g.components_within(g.vertices().difference(removed)).len())
}

/// `d`: the largest number of components produced by deleting one vertex.
pub fn max_components_one_removal(g: &Graph) -> usize {
    let all = g.vertices();
    (0..g.vertex_count())
        .map(|v| g.components_within(all.without(v)).len())
        .max()
        .unwrap_or(0)
}

/// `δ`: the largest number of components produced by deleting two vertices.
pub fn max_components_two_removals(g: &Graph) -> Result<usize, GraphError> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(GraphError::TooFewVertices {
            needed: 3,
            actual: n,
        });
    }
    let all = g.vertices();
    let mut best = 0;
    for a in 0..n {
        for b in a + 1..n {
            best = best.max(g.components_within(all.without(a).without(b)).len());
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaCase {
    /// Two highest-degree vertices exist that are not adjacent:
    /// `δ = Δ1 + Δ2 - 1`.
    NonAdjacent,
    /// Every highest-degree pair is adjacent: `δ = Δ1 + Δ2 - 2`.
    Adjacent,
}

/// The pair of highest-degree vertices that realises `δ` on a tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaPair {
    /// Vertex of degree `Δ1`.
    pub first: usize,
    /// Vertex of degree `Δ2`.
    pub second: usize,
    pub max_degree: usize,
    pub second_degree: usize,
    pub case: DeltaCase,
}

impl DeltaPair {
    pub fn delta(&self) -> usize {
        match self.case {
            DeltaCase::NonAdjacent => self.max_degree + self.second_degree - 1,
            DeltaCase::Adjacent => self.max_degree + self.second_degree - 2,
        }
    }
}

/// Picks `v1` of degree `Δ1` and `v2` of degree `Δ2`, scanning candidates in
/// index order and favouring a non-adjacent pair when one exists.
pub fn delta_pair(tree: &Graph) -> Result<DeltaPair, GraphError> {
    if !tree.is_tree() {
        return Err(GraphError::NotATree);
    }
    let n = tree.vertex_count();
    if n < 3 {
        return Err(GraphError::TooFewVertices {
            needed: 3,
            actual: n,
        });
    }
    let mut degrees: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let (d1, d2) = (degrees[0], degrees[1]);

    let mut fallback = None;
    for u in (0..n).filter(|&u| tree.degree(u) == d1) {
        for v in (0..n).filter(|&v| v != u && tree.degree(v) == d2) {
            let case = if tree.has_edge(u, v) {
                DeltaCase::Adjacent
            } else {
                DeltaCase::NonAdjacent
            };
            let pair = DeltaPair {
                first: u,
                second: v,
                max_degree: d1,
                second_degree: d2,
                case,
            };
            if case == DeltaCase::NonAdjacent {
                return Ok(pair);
            }
            fallback.get_or_insert(pair);
        }
    }
    Ok(fallback.expect("a tree with three vertices has two vertices of top degrees"))
}

/// Closed form for `δ` on trees: `Δ1 + Δ2 - 1` if two non-adjacent
/// highest-degree vertices exist, `Δ1 + Δ2 - 2` otherwise.
pub fn delta_formula(tree: &Graph) -> Result<usize, GraphError> {
    delta_pair(tree).map(|p| p.delta())
}
