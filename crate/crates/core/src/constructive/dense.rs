use super::bipolar_split::split_along;
use super::{ensure, require_agents, require_disjoint, ConstructError};
use crate::graph::{bipolar_ordering, Graph, VertexSet};
use crate::instance::{Allocation, Instance};
use crate::rational::Rational;

/// The non-edges of `g` when they form a nonempty matching.
pub(crate) fn missing_matching(g: &Graph) -> Option<Vec<(usize, usize)>> {
    let m = g.vertex_count();
    let mut pairs = Vec::new();
    for a in 0..m {
        let missing = g.vertices().without(a).difference(g.neighbors(a));
        match missing.len() {
            0 => {}
            1 => {
                let b = missing.first().unwrap();
                if a < b {
                    pairs.push((a, b));
                }
            }
            _ => return None,
        }
    }
    (!pairs.is_empty()).then_some(pairs)
}

/// Number of removed edges when `g` is a complete graph minus a nonempty
/// matching.
pub fn missing_matching_pairs(g: &Graph) -> Option<usize> {
    missing_matching(g).map(|p| p.len())
}

/// Side sizes when `g` is complete bipartite, the side of vertex 0 first.
pub fn bipartite_side_sizes(g: &Graph) -> Option<(usize, usize)> {
    bipartite_sides(g).map(|(a, b)| (a.len(), b.len()))
}

/// Fraction of her total each agent is guaranteed on a complete graph with
/// `k` disjoint edges removed.
pub fn matching_guarantee(m: usize, k: usize) -> Rational {
    if m <= 4 || (m == 5 && k == 2) {
        Rational::new(1, 2)
    } else {
        Rational::new(m as i128 - 3, m as i128 - 2)
    }
}

/// Tries to give each agent all of her valued vertices, spreading the
/// unvalued ones so that both bundles stay connected.
fn full_value_split(inst: &Instance) -> Option<Allocation> {
    let g = inst.graph();
    let v0 = inst.valued_by(0);
    let v1 = inst.valued_by(1);
    let u = g.vertices().difference(v0).difference(v1);
    let mut candidates = vec![(v0.union(u), v1), (v0, v1.union(u))];
    for z in u {
        let rest = u.without(z);
        candidates.push((v0.with(z), v1.union(rest)));
        candidates.push((v0.union(rest), v1.with(z)));
    }
    candidates
        .into_iter()
        .find(|&(a, b)| g.is_connected_subset(a) && g.is_connected_subset(b))
        .map(|(a, b)| Allocation::new(vec![a, b]))
}

/// The vertex of `s` that `agent` values least, lowest label on ties.
fn least_valued(inst: &Instance, agent: usize, s: VertexSet) -> Option<usize> {
    s.iter().min_by(|&a, &b| {
        inst.utility(agent, a)
            .cmp(&inst.utility(agent, b))
            .then(a.cmp(&b))
    })
}

fn floors(inst: &Instance, f: Rational) -> Vec<Rational> {
    (0..inst.agent_count()).map(|i| inst.total(i) * f).collect()
}

/// Two agents on a complete graph with a nonempty matching removed.
///
/// Each agent gets at least half her total on three vertices, on four
/// vertices and on the five-vertex graph missing two edges, and
/// `(m − 3)/(m − 2)` of it otherwise.
pub fn complete_minus_matching_2(inst: &Instance) -> Result<Allocation, ConstructError> {
    require_agents(inst, 2)?;
    require_disjoint(inst)?;
    let g = inst.graph();
    let pairs = missing_matching(g).ok_or(ConstructError::WrongClass(
        "a complete graph minus a nonempty matching",
    ))?;
    let m = g.vertex_count();
    let fl = floors(inst, matching_guarantee(m, pairs.len()));
    let what = "complete graph minus a matching";
    if let Some(a) = full_value_split(inst) {
        ensure(inst, &a, &fl, what)?;
        return Ok(a);
    }
    let alloc = if m <= 4 || (m == 5 && pairs.len() == 2) {
        small_case(inst, &pairs, &fl)
    } else {
        pair_owner_case(inst, &pairs)
    }
    .ok_or_else(|| ConstructError::GuaranteeViolated(format!("{what}: no case applies")))?;
    ensure(inst, &alloc, &fl, what)?;
    Ok(alloc)
}

/// Three or four vertices, or five with two missing edges. On the latter
/// an agent owning a missing pair and the vertex outside the matching takes
/// that vertex and the better half of her pair; everything else falls back
/// to the half-value cut along a bipolar ordering.
fn small_case(inst: &Instance, pairs: &[(usize, usize)], fl: &[Rational]) -> Option<Allocation> {
    let g = inst.graph();
    let all = g.vertices();
    if g.vertex_count() == 5 {
        let covered: VertexSet = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        let free = all.difference(covered).first()?;
        for a in 0..2 {
            let owned = inst.valued_by(a);
            for &(x, y) in pairs {
                if owned.contains(free) && owned.contains(x) && owned.contains(y) {
                    let hi = if inst.utility(a, y) > inst.utility(a, x) {
                        y
                    } else {
                        x
                    };
                    let mine = VertexSet::from_vertices([hi, free]);
                    let mut bundles = vec![VertexSet::EMPTY; 2];
                    bundles[a] = mine;
                    bundles[1 - a] = all.difference(mine);
                    let alloc = Allocation::new(bundles);
                    if ensure(inst, &alloc, fl, "").is_ok() {
                        return Some(alloc);
                    }
                }
            }
        }
    }
    let order = bipolar_ordering(g)?;
    let (b, _) = split_along(inst, &order, [0, 1]);
    Some(Allocation::new(b.to_vec()))
}

/// Larger graphs without a full-value split: one agent values exactly a
/// missing pair. She takes it together with the other agent's least valued
/// vertex.
fn pair_owner_case(inst: &Instance, pairs: &[(usize, usize)]) -> Option<Allocation> {
    let all = inst.graph().vertices();
    for a in 0..2 {
        let owned = inst.valued_by(a);
        if let Some(&(x, y)) = pairs
            .iter()
            .find(|&&(x, y)| owned == VertexSet::from_vertices([x, y]))
        {
            let rest = all.without(x).without(y);
            let w = least_valued(inst, 1 - a, rest)?;
            let mine = VertexSet::from_vertices([x, y, w]);
            let mut bundles = vec![VertexSet::EMPTY; 2];
            bundles[a] = mine;
            bundles[1 - a] = all.difference(mine);
            return Some(Allocation::new(bundles));
        }
    }
    None
}

/// The two sides of a complete bipartite graph, the side of vertex 0 first.
pub(crate) fn bipartite_sides(g: &Graph) -> Option<(VertexSet, VertexSet)> {
    let colour = g.bipartition()?;
    let s0: VertexSet = (0..g.vertex_count())
        .filter(|&v| colour[v] == colour[0])
        .collect();
    let s1 = g.vertices().difference(s0);
    (g.edge_count() == s0.len() * s1.len()).then_some((s0, s1))
}

/// Two agents on a complete bipartite graph whose smaller side has `x ≥ 2`
/// vertices; each agent gets at least `(x − 1)/x` of her total.
pub fn complete_bipartite_egal_2(inst: &Instance) -> Result<Allocation, ConstructError> {
    require_agents(inst, 2)?;
    require_disjoint(inst)?;
    let g = inst.graph();
    let (s0, s1) = bipartite_sides(g).ok_or(ConstructError::WrongClass("complete bipartite"))?;
    let x = s0.len().min(s1.len());
    if x < 2 {
        return Err(ConstructError::Precondition(
            "the smaller side has fewer than two vertices".into(),
        ));
    }
    let fl = floors(inst, Rational::new(x as i128 - 1, x as i128));
    let what = "complete bipartite graph";
    if let Some(a) = full_value_split(inst) {
        ensure(inst, &a, &fl, what)?;
        return Ok(a);
    }
    let alloc = one_sided_case(inst, s0, s1)
        .ok_or_else(|| ConstructError::GuaranteeViolated(format!("{what}: no case applies")))?;
    ensure(inst, &alloc, &fl, what)?;
    Ok(alloc)
}

/// Some agent `a` values vertices on one side `p` only. If the other agent
/// also values something in `p`, she takes those vertices and all of the
/// other side except her least valued vertex there. Otherwise each agent
/// keeps her side minus her least valued vertex, which goes to the other.
fn one_sided_case(inst: &Instance, s0: VertexSet, s1: VertexSet) -> Option<Allocation> {
    let (a, p, q) = (0..2).find_map(|a| {
        let owned = inst.valued_by(a);
        if owned.is_empty() {
            None
        } else if owned.is_subset(s0) {
            Some((a, s0, s1))
        } else if owned.is_subset(s1) {
            Some((a, s1, s0))
        } else {
            None
        }
    })?;
    let b = 1 - a;
    let vb = inst.valued_by(b);
    let qb = least_valued(inst, b, q)?;
    let mut bundles = vec![VertexSet::EMPTY; 2];
    if !vb.is_disjoint(p) {
        bundles[b] = vb.intersection(p).union(q.without(qb));
        bundles[a] = p.difference(vb).with(qb);
    } else {
        let pa = least_valued(inst, a, p)?;
        bundles[a] = p.without(pa).with(qb);
        bundles[b] = q.without(qb).with(pa);
    }
    Some(Allocation::new(bundles))
}
