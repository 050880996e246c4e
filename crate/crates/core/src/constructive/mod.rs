//! Constructive connected allocations with provable welfare guarantees.
//!
//! Most procedures expect a disjoint-valued instance, where every vertex is
//! positively valued by at most one agent. Each one re-checks its own
//! guarantee before returning and reports a violation as an error instead
//! of handing back a weaker allocation.

mod alg1;
mod bipolar_split;
mod dense;
mod knife;
mod seeds;
mod tree3;
mod util2;

use num_traits::Zero;

use crate::graph::{Graph, GraphError, VertexSet};
use crate::instance::{bundle_utility, Allocation, Instance, InstanceError};
use crate::rational::{format_rational, Rational};

pub use alg1::{alg1_connectivity1_2, alg1_gamma};
pub use bipolar_split::bipolar_split_2;
pub use dense::{
    bipartite_side_sizes, complete_bipartite_egal_2, complete_minus_matching_2, matching_guarantee,
    missing_matching_pairs,
};
pub use knife::{cycle_egal_n, moving_knife_path};
pub use seeds::best_item_seeds;
pub use tree3::{
    alg2_tree_3_case1, alg3_tree_3_case2, divide_subtree_2, tree_3_allocation, tree_3_cut, TreeCut,
};
pub use util2::{util_cycle_best_arc_2, util_tree_best_edge_2};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("expected {expected} agents, found {actual}")]
    AgentCount { expected: usize, actual: usize },
    #[error("vertex {0} is positively valued by more than one agent")]
    NotDisjointValued(usize),
    #[error("the graph is not {0}")]
    WrongClass(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("ordering is not a bipolar ordering of the graph")]
    InvalidOrdering,
    #[error("agents {0} and {1} reach the target on the same vertex")]
    KnifeTie(usize, usize),
    #[error("target {0} cannot be met for every agent")]
    TargetInfeasible(String),
    #[error("guarantee violated: {0}")]
    GuaranteeViolated(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

pub(crate) fn require_agents(inst: &Instance, n: usize) -> Result<(), ConstructError> {
    if inst.agent_count() != n {
        return Err(ConstructError::AgentCount {
            expected: n,
            actual: inst.agent_count(),
        });
    }
    Ok(())
}

pub(crate) fn require_disjoint(inst: &Instance) -> Result<(), ConstructError> {
    for v in 0..inst.item_count() {
        let valuers = (0..inst.agent_count())
            .filter(|&i| !inst.utility(i, v).is_zero())
            .count();
        if valuers > 1 {
            return Err(ConstructError::NotDisjointValued(v));
        }
    }
    Ok(())
}

/// Egalitarian optimum of a disjoint-valued instance: every agent keeps all
/// of her valued vertices.
pub fn disjoint_opt_egal(inst: &Instance) -> Rational {
    (0..inst.agent_count())
        .map(|i| inst.total(i))
        .min()
        .expect("instances have at least one agent")
}

/// Checks that `alloc` is a connected partition and that agent `i` gets at
/// least `floors[i]`.
pub(crate) fn ensure(
    inst: &Instance,
    alloc: &Allocation,
    floors: &[Rational],
    what: &str,
) -> Result<(), ConstructError> {
    alloc
        .validate(inst)
        .map_err(|e| ConstructError::GuaranteeViolated(format!("{what}: {e}")))?;
    for (i, &b) in alloc.bundles.iter().enumerate() {
        if !inst.graph().is_connected_subset(b) {
            return Err(ConstructError::GuaranteeViolated(format!(
                "{what}: bundle of agent {i} is disconnected"
            )));
        }
        let got = bundle_utility(inst, i, b);
        if got < floors[i] {
            return Err(ConstructError::GuaranteeViolated(format!(
                "{what}: agent {i} gets {} < {}",
                format_rational(&got),
                format_rational(&floors[i])
            )));
        }
    }
    Ok(())
}

/// Vertices of a path graph from its lower-labelled end.
pub fn path_order(g: &Graph) -> Option<Vec<usize>> {
    let m = g.vertex_count();
    if m == 1 {
        return Some(vec![0]);
    }
    if !g.is_tree() || g.max_degree() > 2 {
        return None;
    }
    let start = (0..m).find(|&v| g.degree(v) == 1)?;
    Some(walk(g, start, None, m))
}

/// Vertices of a cycle graph starting at 0 and moving to its smaller
/// neighbour first.
pub fn cycle_order(g: &Graph) -> Option<Vec<usize>> {
    let m = g.vertex_count();
    if m < 3 || (0..m).any(|v| g.degree(v) != 2) || g.edge_count() != m {
        return None;
    }
    Some(walk(g, 0, None, m))
}

fn walk(g: &Graph, start: usize, mut prev: Option<usize>, len: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut cur = start;
    while order.len() < len {
        let next = g
            .neighbors(cur)
            .iter()
            .find(|&w| Some(w) != prev)
            .expect("path and cycle vertices have an onward neighbour");
        prev = Some(cur);
        cur = next;
        order.push(cur);
    }
    order
}

/// Maps bundles of a restricted instance back to the parent labels.
pub(crate) fn lift(bundles: &[VertexSet], map: &[usize]) -> Vec<VertexSet> {
    bundles
        .iter()
        .map(|b| b.iter().map(|v| map[v]).collect())
        .collect()
}
