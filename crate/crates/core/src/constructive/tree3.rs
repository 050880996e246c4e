use super::alg1::{self, alg1_gamma};
use super::bipolar_split::split_along;
use super::{ensure, lift, path_order, require_agents, require_disjoint, ConstructError};
use crate::graph::{delta_pair, spanning_tree, DeltaCase, DeltaPair, RootedTree, VertexSet};
use crate::instance::{bundle_utility, Allocation, Instance};
use crate::rational::{int, Rational};

/// A subtree singled out for one agent by the three-agent tree procedures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCut {
    pub subtree: VertexSet,
    /// The agent receiving `subtree`.
    pub agent: usize,
    /// Every other agent `j` values `subtree` at most `others_bound * u_j(G)`.
    pub others_bound: Rational,
    pub delta: usize,
    /// Taken at a root of degree Δ2 before descending (second case only).
    pub early: bool,
}

fn checked_pair(inst: &Instance) -> Result<DeltaPair, ConstructError> {
    require_agents(inst, 3)?;
    require_disjoint(inst)?;
    if !inst.graph().is_tree() {
        return Err(ConstructError::WrongClass("a tree"));
    }
    if let Some(i) = (0..3).find(|&i| inst.total(i) == int(0)) {
        return Err(ConstructError::Precondition(format!(
            "agent {i} has total utility 0"
        )));
    }
    Ok(delta_pair(inst.graph())?)
}

struct Walk<'a> {
    inst: &'a Instance,
    tree: RootedTree,
    delta: Rational,
}

impl Walk<'_> {
    fn heavy(&self, s: VertexSet) -> bool {
        (0..3).any(|i| bundle_utility(self.inst, i, s) * self.delta >= self.inst.total(i))
    }

    fn first_heavy_child(&self, v: usize) -> Option<usize> {
        self.tree.children[v]
            .iter()
            .copied()
            .find(|&c| self.heavy(self.tree.subtree(c)))
    }

    fn descend(&self, mut top: usize) -> usize {
        while let Some(c) = self.first_heavy_child(top) {
            top = c;
        }
        top
    }

    /// Lowest agent that finds `s` heavy while every other agent values it
    /// at most `bound` of her total.
    fn receiver(&self, s: VertexSet, bound: Rational) -> Option<usize> {
        (0..3).find(|&i| {
            bundle_utility(self.inst, i, s) * self.delta >= self.inst.total(i)
                && (0..3)
                    .filter(|&j| j != i)
                    .all(|j| bundle_utility(self.inst, j, s) <= bound * self.inst.total(j))
        })
    }
}

fn walk<'a>(inst: &'a Instance, pair: &DeltaPair) -> Result<Walk<'a>, ConstructError> {
    Ok(Walk {
        inst,
        tree: spanning_tree(inst.graph(), pair.first)?,
        delta: int(pair.delta() as i128),
    })
}

fn cut(
    w: &Walk,
    top: usize,
    bound: Rational,
    delta: usize,
    early: bool,
) -> Result<TreeCut, ConstructError> {
    let subtree = w.tree.subtree(top);
    let agent = w.receiver(subtree, bound).ok_or_else(|| {
        ConstructError::GuaranteeViolated(format!("no agent fits the subtree at {top}"))
    })?;
    Ok(TreeCut {
        subtree,
        agent,
        others_bound: bound,
        delta,
        early,
    })
}

/// First case: the two highest-degree vertices can be chosen non-adjacent
/// and `δ = Δ1 + Δ2 − 1`. Roots the tree at the Δ1 vertex and descends
/// through heavy subtrees.
pub fn alg2_tree_3_case1(inst: &Instance) -> Result<TreeCut, ConstructError> {
    let pair = checked_pair(inst)?;
    if pair.case != DeltaCase::NonAdjacent {
        return Err(ConstructError::Precondition(
            "the degree pair is adjacent".into(),
        ));
    }
    let w = walk(inst, &pair)?;
    let delta = pair.delta();
    let top = w
        .first_heavy_child(pair.first)
        .ok_or_else(|| ConstructError::GuaranteeViolated("no heavy top-level subtree".into()))?;
    let top = w.descend(top);
    let bound = Rational::new(pair.second_degree as i128 - 1, delta as i128);
    cut(&w, top, bound, delta, false)
}

/// Second case: the degree pair is adjacent and `δ = Δ1 + Δ2 − 2`. A first
/// heavy subtree rooted at a vertex of degree Δ2 is returned at once when
/// it already meets the weaker bound; otherwise the walk steps into a heavy
/// child and descends as in the first case.
pub fn alg3_tree_3_case2(inst: &Instance) -> Result<TreeCut, ConstructError> {
    let pair = checked_pair(inst)?;
    if pair.case != DeltaCase::Adjacent {
        return Err(ConstructError::Precondition(
            "the degree pair is not adjacent".into(),
        ));
    }
    let w = walk(inst, &pair)?;
    let delta = pair.delta();
    let d2 = pair.second_degree as i128;
    let mut top = w
        .first_heavy_child(pair.first)
        .ok_or_else(|| ConstructError::GuaranteeViolated("no heavy top-level subtree".into()))?;
    if inst.graph().degree(top) == pair.second_degree {
        let early = Rational::new(d2 - 1, delta as i128);
        if w.receiver(w.tree.subtree(top), early).is_some() {
            return cut(&w, top, early, delta, true);
        }
        top = w.first_heavy_child(top).ok_or_else(|| {
            ConstructError::GuaranteeViolated("no heavy child below the degree-Δ2 root".into())
        })?;
    }
    let top = w.descend(top);
    cut(&w, top, Rational::new(d2 - 2, delta as i128), delta, false)
}

/// Dispatches to the case matching the tree's degree pair.
pub fn tree_3_cut(inst: &Instance) -> Result<TreeCut, ConstructError> {
    let pair = checked_pair(inst)?;
    match pair.case {
        DeltaCase::NonAdjacent => alg2_tree_3_case1(inst),
        DeltaCase::Adjacent => alg3_tree_3_case2(inst),
    }
}

/// Splits the connected vertex set `part` between agents `i` and `j`:
/// paths by the half-value cut along the path, other trees by Algorithm 1
/// on the induced subtree. Returns the bundles for `i` and `j` and the
/// divisor guaranteed relative to each agent's value of `part`.
pub(crate) fn split_part(
    inst: &Instance,
    part: VertexSet,
    i: usize,
    j: usize,
) -> Result<([VertexSet; 2], usize), ConstructError> {
    if part.is_empty() {
        return Ok(([VertexSet::EMPTY; 2], 1));
    }
    let (sub, map) = inst.restrict(part, &[i, j])?;
    let (bundles, divisor) = match path_order(sub.graph()) {
        Some(order) => (split_along(&sub, &order, [0, 1]).0.to_vec(), 2),
        None => {
            let gamma = alg1_gamma(sub.graph());
            (alg1::run(&sub, gamma)?.bundles, gamma)
        }
    };
    let lifted = lift(&bundles, &map);
    Ok(([lifted[0], lifted[1]], divisor))
}

/// Divides a subtree `part` that both agents value at `Δ1(G)/δ` of their
/// totals or more, so each gets at least `1/δ` of her total.
pub fn divide_subtree_2(
    inst: &Instance,
    part: VertexSet,
    i: usize,
    j: usize,
) -> Result<(VertexSet, VertexSet), ConstructError> {
    require_disjoint(inst)?;
    let g = inst.graph();
    if !g.is_tree() {
        return Err(ConstructError::WrongClass("a tree"));
    }
    if i == j || i >= inst.agent_count() || j >= inst.agent_count() {
        return Err(ConstructError::Precondition(format!(
            "agents {i} and {j} are not two distinct agents"
        )));
    }
    if part.is_empty() || !g.try_is_connected_subset(part)? {
        return Err(ConstructError::Precondition(
            "the part is not a nonempty subtree".into(),
        ));
    }
    let delta = int(delta_pair(g)?.delta() as i128);
    let d1 = int(g.max_degree() as i128);
    for a in [i, j] {
        if bundle_utility(inst, a, part) * delta < d1 * inst.total(a) {
            return Err(ConstructError::Precondition(format!(
                "agent {a} values the part below Δ1/δ of her total"
            )));
        }
    }
    let ([bi, bj], _) = split_part(inst, part, i, j)?;
    for (a, b) in [(i, bi), (j, bj)] {
        if !g.is_connected_subset(b) || bundle_utility(inst, a, b) * delta < inst.total(a) {
            return Err(ConstructError::GuaranteeViolated(format!(
                "subtree division leaves agent {a} below 1/δ"
            )));
        }
    }
    Ok((bi, bj))
}

/// Connected allocation for three agents on a tree with at least five
/// vertices giving each agent at least `1/δ` of her total.
///
/// An agent with total 0 gets nothing and the other two share the tree by
/// the two-agent split; their floors are then the two-agent ones.
pub fn tree_3_allocation(inst: &Instance) -> Result<Allocation, ConstructError> {
    require_agents(inst, 3)?;
    require_disjoint(inst)?;
    let g = inst.graph();
    if !g.is_tree() {
        return Err(ConstructError::WrongClass("a tree"));
    }
    if g.vertex_count() < 5 {
        return Err(ConstructError::Precondition(
            "the tree has fewer than five vertices".into(),
        ));
    }
    let all = g.vertices();
    let mut bundles = vec![VertexSet::EMPTY; 3];
    let mut floors = vec![int(0); 3];
    if let Some(z) = (0..3).find(|&a| inst.total(a) == int(0)) {
        let (i, j) = others(z);
        let ([bi, bj], divisor) = split_part(inst, all, i, j)?;
        bundles[i] = bi;
        bundles[j] = bj;
        for a in [i, j] {
            floors[a] = inst.total(a) / int(divisor as i128);
        }
        let alloc = Allocation::new(bundles);
        ensure(inst, &alloc, &floors, "two-agent fallback on a tree")?;
        return Ok(alloc);
    }
    let c = tree_3_cut(inst)?;
    let (i, j) = others(c.agent);
    let ([bi, bj], _) = split_part(inst, all.difference(c.subtree), i, j)?;
    bundles[c.agent] = c.subtree;
    bundles[i] = bi;
    bundles[j] = bj;
    for (a, f) in floors.iter_mut().enumerate() {
        *f = inst.total(a) / int(c.delta as i128);
    }
    let alloc = Allocation::new(bundles);
    ensure(inst, &alloc, &floors, "tree with three agents")?;
    Ok(alloc)
}

fn others(a: usize) -> (usize, usize) {
    match a {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::instance::egal_welfare;
    use crate::rational::frac;

    #[test]
    fn star_case_two_returns_early() {
        let g = Graph::star(5).unwrap();
        let z = int(0);
        let h = frac(1, 2);
        let inst = Instance::unnormalized(
            g,
            vec![
                vec![int(1), z, z, z, z],
                vec![z, h, h, z, z],
                vec![z, z, z, h, h],
            ],
        )
        .unwrap();
        let c = alg3_tree_3_case2(&inst).unwrap();
        assert_eq!(c.delta, 3);
        assert!(c.early);
        assert!(bundle_utility(&inst, c.agent, c.subtree) * int(3) >= inst.total(c.agent));
        assert!(alg2_tree_3_case1(&inst).is_err());
    }

    #[test]
    fn spider_lower_bound_instance() {
        // spider with three legs of length 2: centre 0, legs 1-2, 3-4, 5-6
        let g = Graph::spider(3, 2).unwrap();
        let pair = delta_pair(&g).unwrap();
        let delta = pair.delta();
        assert_eq!(delta, 3);
        let mut u = vec![vec![int(0); 7]; 3];
        u[0][pair.first] = int(1);
        u[1][pair.second] = int(1);
        let rest = g.vertices().without(pair.first).without(pair.second);
        let comps = g.components_within(rest);
        assert_eq!(comps.len(), delta);
        for c in &comps {
            u[2][c.first().unwrap()] = frac(1, delta as i128);
        }
        let inst = Instance::normalized(g, u).unwrap();
        let a = tree_3_allocation(&inst).unwrap();
        assert_eq!(egal_welfare(&inst, &a), frac(1, 3));
    }

    #[test]
    fn divide_rejects_light_parts() {
        let g = Graph::path(5).unwrap();
        let z = int(0);
        let inst = Instance::unnormalized(
            g,
            vec![
                vec![int(1), z, z, z, z],
                vec![z, int(1), z, z, z],
                vec![z, z, z, z, int(1)],
            ],
        )
        .unwrap();
        let part = VertexSet::from_vertices([0, 1]);
        let (a, b) = divide_subtree_2(&inst, part, 0, 1).unwrap();
        assert_eq!((a, b), (VertexSet::singleton(0), VertexSet::singleton(1)));
        assert!(matches!(
            divide_subtree_2(&inst, part, 0, 2),
            Err(ConstructError::Precondition(_))
        ));
    }

    #[test]
    fn zero_total_agent_falls_back() {
        let g = Graph::path(5).unwrap();
        let q = frac(1, 4);
        let z = int(0);
        let inst = Instance::unnormalized(
            g,
            vec![vec![int(1), z, z, z, z], vec![z, q, q, q, q], vec![z; 5]],
        )
        .unwrap();
        let a = tree_3_allocation(&inst).unwrap();
        assert!(a.bundles[2].is_empty());
    }
}
