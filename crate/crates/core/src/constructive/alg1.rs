use super::{ensure, require_agents, require_disjoint, ConstructError};
use crate::graph::{
    max_components_one_removal, spanning_tree, vertex_connectivity, Graph, VertexSet,
};
use crate::instance::{bundle_utility, Allocation, Instance};
use crate::rational::{int, Rational};

/// `max(d, 3)` where `d` is the largest number of components left by
/// deleting one vertex.
pub fn alg1_gamma(g: &Graph) -> usize {
    max_components_one_removal(g).max(3)
}

/// Two-agent allocation on a graph of connectivity 1 giving agent `i` at
/// least `u_i(G) / max(d, 3)`.
///
/// Works on a spanning tree: top-level subtrees that are light for both
/// agents are merged along graph edges until one is heavy for somebody,
/// then the search descends into heavy child subtrees. If the last heavy
/// subtree does not leave enough for the other agent, the tree is re-rooted
/// at its root and the merging repeats once.
pub fn alg1_connectivity1_2(inst: &Instance) -> Result<Allocation, ConstructError> {
    require_agents(inst, 2)?;
    require_disjoint(inst)?;
    let g = inst.graph();
    if g.vertex_count() < 2 || vertex_connectivity(g) != 1 {
        return Err(ConstructError::WrongClass("of connectivity 1"));
    }
    let gamma = alg1_gamma(g);
    let alloc = run(inst, gamma)?;
    let floors: Vec<Rational> = (0..2).map(|i| inst.total(i) / int(gamma as i128)).collect();
    ensure(inst, &alloc, &floors, "algorithm 1")?;
    Ok(alloc)
}

/// The procedure for agents 0 and 1 of `inst` with divisor `gamma`. The
/// caller checks the guarantee.
pub(crate) fn run(inst: &Instance, gamma: usize) -> Result<Allocation, ConstructError> {
    let g = inst.graph();
    let all = g.vertices();
    let mut state = State {
        inst,
        g,
        gamma: int(gamma as i128),
        totals: [inst.total(0), inst.total(1)],
        adj: tree_adjacency(g)?,
    };
    let mut root = 0;
    state.merge_until_heavy(root)?;
    let (mut top, mut sub) = state
        .top_level(root)
        .into_iter()
        .find(|&(_, s)| state.heavy_for(s).is_some())
        .ok_or_else(|| internal("no heavy top-level subtree"))?;
    let parent = state.parents(root);
    loop {
        let next = state.adj[top]
            .iter()
            .filter(|&c| Some(c) != parent[top])
            .map(|c| (c, state.reach(c, all.without(top))))
            .find(|&(_, s)| state.heavy_for(s).is_some());
        match next {
            Some((c, s)) => {
                top = c;
                sub = s;
            }
            None => break,
        }
    }
    for i in 0..2 {
        let j = 1 - i;
        if state.heavy(i, sub) && state.heavy(j, all.difference(sub)) {
            return Ok(pair(i, sub, all));
        }
    }
    root = top;
    state.merge_until_heavy(root)?;
    let (i, sub) = state
        .top_level(root)
        .into_iter()
        .find_map(|(_, s)| state.heavy_for(s).map(|i| (i, s)))
        .ok_or_else(|| internal("no heavy subtree after re-rooting"))?;
    Ok(pair(i, sub, all))
}

fn pair(i: usize, sub: VertexSet, all: VertexSet) -> Allocation {
    let mut bundles = vec![VertexSet::EMPTY; 2];
    bundles[i] = sub;
    bundles[1 - i] = all.difference(sub);
    Allocation::new(bundles)
}

fn internal(what: &str) -> ConstructError {
    ConstructError::GuaranteeViolated(format!("algorithm 1: {what}"))
}

fn tree_adjacency(g: &Graph) -> Result<Vec<VertexSet>, ConstructError> {
    let t = spanning_tree(g, 0)?;
    let mut adj = vec![VertexSet::EMPTY; g.vertex_count()];
    for (p, c) in t.edges() {
        adj[p].insert(c);
        adj[c].insert(p);
    }
    Ok(adj)
}

struct State<'a> {
    inst: &'a Instance,
    g: &'a Graph,
    gamma: Rational,
    totals: [Rational; 2],
    /// Current spanning tree.
    adj: Vec<VertexSet>,
}

impl State<'_> {
    fn heavy(&self, agent: usize, s: VertexSet) -> bool {
        bundle_utility(self.inst, agent, s) * self.gamma >= self.totals[agent]
    }

    fn heavy_for(&self, s: VertexSet) -> Option<usize> {
        (0..2).find(|&i| self.heavy(i, s))
    }

    fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in self.adj[v].intersection(within).difference(seen) {
                seen.insert(w);
                stack.push(w);
            }
        }
        seen
    }

    /// `(child of root, subtree)` for every child of `root`, by child label.
    fn top_level(&self, root: usize) -> Vec<(usize, VertexSet)> {
        let rest = self.g.vertices().without(root);
        self.adj[root]
            .iter()
            .map(|c| (c, self.reach(c, rest)))
            .collect()
    }

    fn parents(&self, root: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.adj.len()];
        let mut seen = VertexSet::singleton(root);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for w in self.adj[v].difference(seen) {
                seen.insert(w);
                parent[w] = Some(v);
                stack.push(w);
            }
        }
        parent
    }

    /// Merges the first pair of top-level subtrees joined by a graph edge,
    /// in child order, until some top-level subtree is heavy for an agent.
    fn merge_until_heavy(&mut self, root: usize) -> Result<(), ConstructError> {
        loop {
            let subs = self.top_level(root);
            if subs.iter().any(|&(_, s)| self.heavy_for(s).is_some()) {
                return Ok(());
            }
            let (x, y, cut) = first_link(self.g, &subs).ok_or_else(|| {
                internal("every top-level subtree is light and none can be merged")
            })?;
            self.adj[x].insert(y);
            self.adj[y].insert(x);
            self.adj[root].remove(cut);
            self.adj[cut].remove(root);
        }
    }
}

/// The first subtree pair `(a, b)`, `a` before `b`, with a graph edge
/// between them: returns the lowest such edge `(x in a, y in b)` and the
/// child of the root heading `b`.
fn first_link(g: &Graph, subs: &[(usize, VertexSet)]) -> Option<(usize, usize, usize)> {
    for (ia, &(_, a)) in subs.iter().enumerate() {
        for &(cb, b) in &subs[ia + 1..] {
            for x in a {
                if let Some(y) = g.neighbors(x).intersection(b).first() {
                    return Some((x, y, cb));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::is_connected_allocation;
    use crate::rational::frac;

    fn check(inst: &Instance) -> Allocation {
        let a = alg1_connectivity1_2(inst).unwrap();
        assert!(is_connected_allocation(inst, &a).unwrap());
        a
    }

    #[test]
    fn star_centre_against_leaves() {
        let g = Graph::star(5).unwrap();
        let q = frac(1, 4);
        let z = int(0);
        let inst =
            Instance::normalized(g, vec![vec![int(1), z, z, z, z], vec![z, q, q, q, q]]).unwrap();
        assert_eq!(alg1_gamma(inst.graph()), 4);
        let a = check(&inst);
        assert!(bundle_utility(&inst, 0, a.bundles[0]) >= frac(1, 4));
        assert!(bundle_utility(&inst, 1, a.bundles[1]) >= frac(1, 4));
    }

    #[test]
    fn path_uses_three() {
        let g = Graph::path(6).unwrap();
        let z = int(0);
        let t = frac(1, 3);
        let inst =
            Instance::normalized(g, vec![vec![t, z, t, z, t, z], vec![z, t, z, t, z, t]]).unwrap();
        assert_eq!(alg1_gamma(inst.graph()), 3);
        check(&inst);
    }

    #[test]
    fn merging_happens_on_graphs_with_cycles() {
        // two triangles sharing vertex 0, plus a pendant 5 on vertex 1
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (1, 5)]).unwrap();
        let z = int(0);
        let inst = Instance::normalized(
            g,
            vec![
                vec![z, frac(1, 2), z, frac(1, 2), z, z],
                vec![z, z, frac(1, 3), z, frac(1, 3), frac(1, 3)],
            ],
        )
        .unwrap();
        check(&inst);
    }

    #[test]
    fn rejects_two_connected_graphs() {
        let g = Graph::cycle(4).unwrap();
        let inst = Instance::unnormalized(
            g,
            vec![vec![int(1), int(0), int(0), int(0)], vec![int(0); 4]],
        )
        .unwrap();
        assert_eq!(
            alg1_connectivity1_2(&inst),
            Err(ConstructError::WrongClass("of connectivity 1"))
        );
    }
}
