use std::collections::HashSet;

use super::{Graph, VertexSet};

/// Searches for a vertex ordering in which every vertex except the first
/// and last has a neighbour earlier and a neighbour later in the order.
///
/// `ordering[p]` is the vertex placed at position `p`. Exhaustive with
/// memoised dead ends, so only suitable for small graphs.
pub fn bipolar_ordering(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n <= 2 {
        return Some((0..n).collect());
    }
    for first in 0..n {
        let mut order = vec![first];
        let mut dead = HashSet::new();
        if extend(g, &mut order, VertexSet::singleton(first), &mut dead) {
            return Some(order);
        }
    }
    None
}

fn extend(g: &Graph, order: &mut Vec<usize>, placed: VertexSet, dead: &mut HashSet<u64>) -> bool {
    let n = g.vertex_count();
    let unplaced = g.vertices().difference(placed);
    if unplaced.len() == 1 {
        order.push(unplaced.first().unwrap());
        return true;
    }
    if dead.contains(&placed.0) {
        return false;
    }
    // An internal vertex needs a placed neighbour now and an unplaced one
    // later; placed vertices still waiting on a later neighbour are always
    // served once that neighbour is placed.
    for v in unplaced {
        let nb = g.neighbors(v);
        if nb.is_disjoint(placed) || nb.is_disjoint(unplaced.without(v)) {
            continue;
        }
        order.push(v);
        if extend(g, order, placed.with(v), dead) {
            return true;
        }
        order.pop();
    }
    debug_assert!(order.len() < n);
    dead.insert(placed.0);
    false
}

/// Checks that `ordering` is a permutation of the vertices in which every
/// internal position has an earlier and a later neighbour.
pub fn is_bipolar_ordering(g: &Graph, ordering: &[usize]) -> bool {
    let n = g.vertex_count();
    if ordering.len() != n {
        return false;
    }
    let mut pos = vec![usize::MAX; n];
    for (p, &v) in ordering.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = p;
    }
    ordering
        .iter()
        .enumerate()
        .skip(1)
        .take(n.saturating_sub(2))
        .all(|(p, &v)| {
            let nb = g.neighbors(v);
            nb.iter().any(|w| pos[w] < p) && nb.iter().any(|w| pos[w] > p)
        })
}
