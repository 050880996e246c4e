use num_traits::Zero;

use super::{ensure, require_disjoint, ConstructError};
use crate::graph::VertexSet;
use crate::instance::{Allocation, Instance};
use crate::rational::{int, Rational};

/// Every agent with positive total starts from her most valued vertex
/// (lowest label on ties); the regions then grow one neighbourhood layer
/// per round, agents in index order, until the graph is covered. Each such
/// agent keeps her seed, so she gets at least `u_i(G) / |valued_by(i)|`.
///
/// Agents valuing nothing get an empty bundle unless nobody values
/// anything, in which case agent 0 takes the graph.
pub fn best_item_seeds(inst: &Instance) -> Result<Allocation, ConstructError> {
    require_disjoint(inst)?;
    let g = inst.graph();
    let n = inst.agent_count();
    let m = g.vertex_count();
    let mut bundles = vec![VertexSet::EMPTY; n];
    let mut taken = VertexSet::EMPTY;
    for (i, b) in bundles.iter_mut().enumerate() {
        if inst.total(i).is_zero() {
            continue;
        }
        let seed = (0..m)
            .max_by(|&a, &c| inst.utility(i, a).cmp(&inst.utility(i, c)).then(c.cmp(&a)))
            .expect("nonempty graph");
        b.insert(seed);
        taken.insert(seed);
    }
    if taken.is_empty() {
        return Ok(Allocation::all_to(inst, 0));
    }
    while taken != g.vertices() {
        for b in bundles.iter_mut().filter(|b| !b.is_empty()) {
            let grow: VertexSet = b
                .iter()
                .map(|v| g.neighbors(v))
                .fold(VertexSet::EMPTY, VertexSet::union)
                .difference(taken);
            *b = b.union(grow);
            taken = taken.union(grow);
        }
    }
    let alloc = Allocation::new(bundles);
    let floors: Vec<Rational> = (0..n)
        .map(|i| match inst.valued_by(i).len() {
            0 => int(0),
            k => inst.total(i) / int(k as i128),
        })
        .collect();
    ensure(inst, &alloc, &floors, "best-item seeds")?;
    Ok(alloc)
}
