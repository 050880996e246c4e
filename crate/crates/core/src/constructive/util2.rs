use super::{cycle_order, require_agents, ConstructError};
use crate::graph::VertexSet;
use crate::instance::{util_welfare, Allocation, Instance};
use crate::rational::Rational;

/// Keeps the candidate with the highest utilitarian welfare; on ties the
/// one whose bundle for agent 0 is lexicographically smallest.
fn best_of(inst: &Instance, candidates: impl IntoIterator<Item = VertexSet>) -> Allocation {
    let all = inst.graph().vertices();
    let mut best: Option<(Rational, Vec<usize>, Allocation)> = None;
    for s in candidates {
        let a = Allocation::new(vec![s, all.difference(s)]);
        let w = util_welfare(inst, &a);
        let key = s.to_vec();
        let better = match &best {
            None => true,
            Some((bw, bk, _)) => w > *bw || (w == *bw && key < *bk),
        };
        if better {
            best = Some((w, key, a));
        }
    }
    best.expect("at least the two single-agent allocations").2
}

/// Best connected two-agent allocation on a tree: one side of a single
/// edge to each agent, or everything to one agent.
pub fn util_tree_best_edge_2(inst: &Instance) -> Result<Allocation, ConstructError> {
    require_agents(inst, 2)?;
    let g = inst.graph();
    if !g.is_tree() {
        return Err(ConstructError::WrongClass("a tree"));
    }
    let all = g.vertices();
    let mut candidates = vec![VertexSet::EMPTY, all];
    for (a, b) in g.edges() {
        let side = reach_without_edge(inst, a, b);
        candidates.push(side);
        candidates.push(all.difference(side));
    }
    Ok(best_of(inst, candidates))
}

fn reach_without_edge(inst: &Instance, a: usize, b: usize) -> VertexSet {
    let g = inst.graph();
    let mut seen = VertexSet::singleton(a);
    let mut stack = vec![a];
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v).difference(seen) {
            if (v, w) != (a, b) {
                seen.insert(w);
                stack.push(w);
            }
        }
    }
    seen
}

/// Best connected two-agent allocation on a cycle: a contiguous arc to
/// agent 0 and the complementary arc to agent 1, the empty and full arcs
/// included.
pub fn util_cycle_best_arc_2(inst: &Instance) -> Result<Allocation, ConstructError> {
    require_agents(inst, 2)?;
    let order = cycle_order(inst.graph()).ok_or(ConstructError::WrongClass("a cycle"))?;
    let m = order.len();
    let mut candidates = vec![VertexSet::EMPTY, inst.graph().vertices()];
    for start in 0..m {
        let mut arc = VertexSet::EMPTY;
        for len in 0..m - 1 {
            arc.insert(order[(start + len) % m]);
            candidates.push(arc);
        }
    }
    Ok(best_of(inst, candidates))
}
