use serde::Serialize;

use super::{
    formula, util_cycle_lower, util_path_lower, util_star_lower, BoundTag, FormulaError,
    GraphClass, Params, PocFormula, WelfareKind,
};
use crate::graph::{
    bipolar_ordering, block_decomposition, delta_pair, is_two_linked_pairs,
    max_components_one_removal, vertex_connectivity, Graph, GraphError, VertexSet,
};
use crate::instance::{Instance, InstanceError};
use crate::rational::{int, Rational};

/// A generated instance and the ratio its construction is meant to show.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generated {
    #[serde(skip)]
    pub instance: Instance,
    pub expected: PocFormula,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

fn out_of_range(msg: impl Into<String>) -> GenError {
    GenError::OutOfRange(msg.into())
}

/// Builds a normalized instance from `(vertex, value)` lists, one per
/// agent; unlisted vertices are worth 0.
fn build(g: Graph, rows: Vec<Vec<(usize, Rational)>>) -> Result<Instance, GenError> {
    let m = g.vertex_count();
    let utilities = rows
        .into_iter()
        .map(|row| {
            let mut u = vec![int(0); m];
            for (v, x) in row {
                u[v] = x;
            }
            u
        })
        .collect();
    Ok(Instance::normalized(g, utilities)?)
}

/// Each listed vertex at an equal share of 1.
fn spread(vs: impl IntoIterator<Item = usize>) -> Vec<(usize, Rational)> {
    let vs: Vec<usize> = vs.into_iter().collect();
    let share = Rational::new(1, vs.len() as i128);
    vs.into_iter().map(|v| (v, share)).collect()
}

fn make(
    kind: WelfareKind,
    class: GraphClass,
    params: Params,
    instance: Instance,
) -> Result<Generated, GenError> {
    Ok(Generated {
        instance,
        expected: formula(kind, class, params)?,
    })
}

/// Which lower-bound construction to use on a complete graph minus a
/// matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchingVariant {
    /// Three vertices, one edge removed.
    L3,
    /// Five vertices, two edges removed.
    L5,
    General,
}

impl MatchingVariant {
    pub fn for_graph(m: usize, matching: usize) -> Self {
        match (m, matching) {
            (3, _) => MatchingVariant::L3,
            (5, 2) => MatchingVariant::L5,
            _ => MatchingVariant::General,
        }
    }
}

fn matching_instance(
    m: usize,
    matching: usize,
    variant: MatchingVariant,
) -> Result<Instance, GenError> {
    if m < 3 || matching == 0 || 2 * matching > m {
        return Err(out_of_range(format!(
            "need m >= 3 and 1 <= k <= m/2, got m={m} k={matching}"
        )));
    }
    if MatchingVariant::for_graph(m, matching) != variant {
        return Err(out_of_range(format!(
            "variant {variant:?} does not fit m={m} k={matching}"
        )));
    }
    let g = Graph::complete_minus_matching(m, matching)?;
    // {0, 1} is always a missing pair
    let rows = match variant {
        MatchingVariant::L5 => vec![spread([0, 1]), spread([2, 3])],
        _ => vec![spread([0, 1]), spread(2..m)],
    };
    build(g, rows)
}

fn matching_params(m: usize, matching: usize) -> Params {
    Params {
        matching,
        ..Params::mn(m, 2)
    }
}

/// One agent on a missing pair, the other on the rest; on the five-vertex
/// graph missing two edges each agent takes one missing pair and the fifth
/// vertex is worth nothing.
pub fn gen_egal_complete_minus_matching(
    m: usize,
    matching: usize,
    variant: MatchingVariant,
) -> Result<Generated, GenError> {
    let inst = matching_instance(m, matching, variant)?;
    make(
        WelfareKind::Egal,
        GraphClass::CompleteMinusMatching,
        matching_params(m, matching),
        inst,
    )
}

/// Same valuations as the egalitarian construction.
pub fn gen_util_complete_minus_matching(
    m: usize,
    matching: usize,
    variant: MatchingVariant,
) -> Result<Generated, GenError> {
    let inst = matching_instance(m, matching, variant)?;
    make(
        WelfareKind::Util,
        GraphClass::CompleteMinusMatching,
        matching_params(m, matching),
        inst,
    )
}

fn bipartite_params(x: usize, y: usize) -> Params {
    Params {
        x,
        y,
        ..Params::mn(x + y, 2)
    }
}

/// Each agent spreads her value over one side. With a side of one vertex
/// the graph is a star: one agent takes the centre, the other the leaves.
pub fn gen_egal_complete_bipartite(x: usize, y: usize) -> Result<Generated, GenError> {
    if x == 0 || y == 0 || x + y < 2 {
        return Err(out_of_range("both sides need a vertex"));
    }
    let g = Graph::complete_bipartite(x, y)?;
    let (v1, v2) = (0..x, x..x + y);
    let rows = vec![spread(v1), spread(v2)];
    let inst = build(g, rows)?;
    make(
        WelfareKind::Egal,
        GraphClass::CompleteBipartite,
        bipartite_params(x, y),
        inst,
    )
}

/// Both sides of size at least 2. A side of size 2 is valued at 1/2 per
/// vertex by agent 0 and the other side evenly by agent 1; otherwise each
/// agent spreads over one side.
pub fn gen_util_complete_bipartite(x: usize, y: usize) -> Result<Generated, GenError> {
    if x < 2 || y < 2 {
        return Err(out_of_range("both sides need at least two vertices"));
    }
    let g = Graph::complete_bipartite(x, y)?;
    let (v1, v2): (Vec<usize>, Vec<usize>) = ((0..x).collect(), (x..x + y).collect());
    let rows = if y == 2 && x != 2 {
        vec![spread(v2), spread(v1)]
    } else {
        vec![spread(v1), spread(v2)]
    };
    let inst = build(g, rows)?;
    make(
        WelfareKind::Util,
        GraphClass::CompleteBipartite,
        bipartite_params(x, y),
        inst,
    )
}

/// First pairs `(a, b)`, `(c, d)` in lexicographic order that cannot be
/// joined by disjoint paths.
pub fn unlinked_pairs(g: &Graph) -> Option<[usize; 4]> {
    let n = g.vertex_count();
    for a in 0..n {
        for b in a + 1..n {
            for c in 0..n {
                for d in c + 1..n {
                    if VertexSet::from_vertices([a, b, c, d]).len() == 4
                        && !is_two_linked_pairs(g, a, b, c, d).ok()?
                    {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Agent 0 on `a` and `b`, agent 1 on `c` and `d`, at 1/2 each. The pairs
/// must not be linkable. The ratio is at least 2, and exactly 2 when the
/// graph has a bipolar ordering.
pub fn gen_egal_2linked_violation(g: &Graph, pairs: [usize; 4]) -> Result<Generated, GenError> {
    let [a, b, c, d] = pairs;
    if is_two_linked_pairs(g, a, b, c, d)? {
        return Err(out_of_range(format!(
            "({a},{b}) and ({c},{d}) can be linked"
        )));
    }
    let m = g.vertex_count();
    let class = if vertex_connectivity(g) == 2 {
        GraphClass::Connectivity2
    } else {
        GraphClass::Generic
    };
    let tag = if bipolar_ordering(g).is_some() {
        BoundTag::Exact
    } else {
        BoundTag::Lower
    };
    let instance = build(g.clone(), vec![spread([a, b]), spread([c, d])])?;
    Ok(Generated {
        instance,
        expected: PocFormula {
            kind: WelfareKind::Egal,
            class,
            params: Params::mn(m, 2),
            value: int(2),
            tag,
        },
    })
}

/// Worst case for a graph of connectivity 1. Agent 0 takes a vertex whose
/// removal leaves `d` components and agent 1 one vertex per component; when
/// `d = 2` and the block-cut tree is not a path, agent 0 instead values
/// three cut vertices of a block meeting three others and agent 1 one
/// vertex beyond each of them.
pub fn gen_egal_connectivity1(g: &Graph) -> Result<Generated, GenError> {
    if g.vertex_count() < 3 || vertex_connectivity(g) != 1 {
        return Err(out_of_range(
            "the graph must have connectivity 1 and 3 or more vertices",
        ));
    }
    let d = max_components_one_removal(g);
    let bd = block_decomposition(g);
    let params = Params {
        d,
        block_path: bd.is_path(),
        ..Params::mn(g.vertex_count(), 2)
    };
    let all = g.vertices();
    let rows = if d >= 3 || bd.is_path() {
        let v = (0..g.vertex_count())
            .find(|&v| g.components_within(all.without(v)).len() == d)
            .expect("d is attained");
        let comps = g.components_within(all.without(v));
        vec![
            vec![(v, int(1))],
            spread(comps.iter().map(|c| c.first().unwrap())),
        ]
    } else {
        let (bi, _) = bd
            .blocks
            .iter()
            .enumerate()
            .find(|&(i, _)| bd.incidence.iter().filter(|&&(b, _)| b == i).count() >= 3)
            .expect("a block-cut tree that is not a path has a block of degree 3");
        let block = bd.blocks[bi];
        let mut cuts: Vec<usize> = bd
            .incidence
            .iter()
            .filter(|&&(b, _)| b == bi)
            .map(|&(_, c)| c)
            .collect();
        cuts.sort_unstable();
        cuts.truncate(3);
        let removed = VertexSet::from_vertices(cuts.iter().copied());
        let comps = g.components_within(all.difference(removed));
        let mut beyond = Vec::new();
        for &c in &cuts {
            let comp = comps
                .iter()
                .filter(|s| s.is_disjoint(block))
                .find(|s| !g.neighbors(c).is_disjoint(**s))
                .expect("every cut vertex of the block has a component outside it");
            beyond.push(comp.first().unwrap());
        }
        vec![spread(cuts), spread(beyond)]
    };
    let inst = build(g.clone(), rows)?;
    make(WelfareKind::Egal, GraphClass::Connectivity1, params, inst)
}

/// Agents 0 and 1 on the two vertices of the degree pair, agent 2 on one
/// vertex of each of the δ components left after deleting them.
pub fn gen_egal_tree_3(tree: &Graph) -> Result<Generated, GenError> {
    if !tree.is_tree() || tree.vertex_count() < 3 {
        return Err(out_of_range("needs a tree with at least 3 vertices"));
    }
    let pair = delta_pair(tree)?;
    let rest = tree.vertices().without(pair.first).without(pair.second);
    let comps = tree.components_within(rest);
    let delta = pair.delta();
    debug_assert_eq!(comps.len(), delta);
    let rows = vec![
        vec![(pair.first, int(1))],
        vec![(pair.second, int(1))],
        spread(comps.iter().map(|c| c.first().unwrap())),
    ];
    let inst = build(tree.clone(), rows)?;
    let params = Params {
        delta,
        ..Params::mn(tree.vertex_count(), 3)
    };
    make(WelfareKind::Egal, GraphClass::Tree, params, inst)
}

/// One agent on `m − n + 1` leaves, every other agent on one of the
/// remaining vertices.
pub fn gen_egal_star(m: usize, n: usize) -> Result<Generated, GenError> {
    if m < 3 || n < 2 || n > m {
        return Err(out_of_range(format!(
            "star needs m >= 3 and 2 <= n <= m, got m={m} n={n}"
        )));
    }
    let g = Graph::star(m)?;
    let k = m - n + 1;
    let mut rows = vec![spread(1..=k)];
    let rest = std::iter::once(0).chain(k + 1..m);
    rows.extend(rest.map(|v| vec![(v, int(1))]));
    let inst = build(g, rows)?;
    make(WelfareKind::Egal, GraphClass::Star, Params::mn(m, n), inst)
}

/// Agent 0 on non-adjacent vertices and one vertex per other agent; for
/// `m ≥ 2n − 1` the first `n − 1` agents sit on the even positions and the
/// last agent on the odd ones (counting from 1).
pub fn gen_egal_path(m: usize, n: usize) -> Result<Generated, GenError> {
    if n < 2 || m < n {
        return Err(out_of_range(format!(
            "path needs 2 <= n <= m, got m={m} n={n}"
        )));
    }
    let g = Graph::path(m)?;
    let rows = if m < 2 * n - 1 {
        spaced_with_singles(m, n)
    } else {
        let mut rows: Vec<_> = (0..n - 1).map(|a| vec![(2 * a + 1, int(1))]).collect();
        rows.push(spread((0..n).map(|i| 2 * i)));
        rows
    };
    let inst = build(g, rows)?;
    make(WelfareKind::Egal, GraphClass::Path, Params::mn(m, n), inst)
}

/// Agent 0 on positions `0, 2, …, 2(m − n)`; agents `1..n` each on one of
/// the remaining positions in order.
fn spaced_with_singles(m: usize, n: usize) -> Vec<Vec<(usize, Rational)>> {
    let spaced: Vec<usize> = (0..=m - n).map(|i| 2 * i).collect();
    let mut rows = vec![spread(spaced.iter().copied())];
    rows.extend(
        (0..m)
            .filter(|v| !spaced.contains(v))
            .map(|v| vec![(v, int(1))]),
    );
    rows
}

/// Three regimes: below `2n − 2` items as on the path; up to `n²` agent 0
/// alternates with the others over the first `2n − 2` vertices; from `n²`
/// agent `a` owns vertices `a, n + a, 2n + a, …`. Extra vertices are
/// worth nothing.
pub fn gen_egal_cycle(m: usize, n: usize) -> Result<Generated, GenError> {
    if n < 2 || m < n.max(3) {
        return Err(out_of_range(format!(
            "cycle needs n >= 2 and m >= max(n, 3), got m={m} n={n}"
        )));
    }
    let g = Graph::cycle(m)?;
    let rows = if m < 2 * n - 2 {
        spaced_with_singles(m, n)
    } else if m < n * n {
        let mut rows = vec![spread((0..n - 1).map(|i| 2 * i))];
        rows.extend((1..n).map(|a| vec![(2 * a - 1, int(1))]));
        rows
    } else {
        (0..n).map(|a| spread((0..n).map(|j| j * n + a))).collect()
    };
    let inst = build(g, rows)?;
    make(WelfareKind::Egal, GraphClass::Cycle, Params::mn(m, n), inst)
}

/// Two-colour the tree; each agent takes one colour and values a vertex at
/// its degree over `m − 1`.
pub fn gen_util_tree(tree: &Graph) -> Result<Generated, GenError> {
    let m = tree.vertex_count();
    if !tree.is_tree() || m < 2 {
        return Err(out_of_range("needs a tree with at least 2 vertices"));
    }
    let colour = tree.bipartition().expect("trees are bipartite");
    let mut rows = vec![Vec::new(), Vec::new()];
    for v in 0..m {
        let a = usize::from(colour[v] != colour[0]);
        rows[a].push((v, Rational::new(tree.degree(v) as i128, m as i128 - 1)));
    }
    let inst = build(tree.clone(), rows)?;
    make(WelfareKind::Util, GraphClass::Tree, Params::mn(m, 2), inst)
}

/// Alternating valuations around the cycle, `1/k` per vertex with
/// `k = ⌊m/2⌋`; on odd cycles the last vertex is worth nothing.
pub fn gen_util_cycle_2(m: usize) -> Result<Generated, GenError> {
    if m < 3 {
        return Err(out_of_range("a cycle has at least 3 vertices"));
    }
    let k = m / 2;
    let g = Graph::cycle(m)?;
    let rows = vec![
        spread((0..k).map(|i| 2 * i)),
        spread((0..k).map(|i| 2 * i + 1)),
    ];
    let inst = build(g, rows)?;
    make(WelfareKind::Util, GraphClass::Cycle, Params::mn(m, 2), inst)
}

fn with_lower(instance: Instance, expected: PocFormula) -> Generated {
    Generated { instance, expected }
}

/// Agent 0 on the centre; with `m = c(n − 1) + d + 1`, agents `1..=d` on
/// `c + 1` leaves each and the rest on `c` leaves each.
pub fn gen_util_star_n(n: usize, c: usize, d: usize) -> Result<Generated, GenError> {
    let expected = util_star_lower(n, c, d)?;
    let m = expected.params.m;
    let g = Graph::star(m)?;
    let mut rows = vec![vec![(0, int(1))]];
    let mut next = 1;
    for a in 1..n {
        let count = if a <= d { c + 1 } else { c };
        rows.push(spread(next..next + count));
        next += count;
    }
    Ok(with_lower(build(g, rows)?, expected))
}

/// Vertex `v` belongs to agent `v mod n`, each agent spreading evenly.
fn cyclic_rows(m: usize, n: usize) -> Vec<Vec<(usize, Rational)>> {
    (0..n).map(|a| spread((a..m).step_by(n))).collect()
}

/// Items valued in the repeating order `0, 1, …, n − 1` along a path of
/// `cn + d` vertices.
pub fn gen_util_path_n(n: usize, c: usize, d: usize) -> Result<Generated, GenError> {
    let expected = util_path_lower(n, c, d)?;
    let m = expected.params.m;
    Ok(with_lower(
        build(Graph::path(m)?, cyclic_rows(m, n))?,
        expected,
    ))
}

/// The repeating order of the path construction around a cycle.
pub fn gen_util_cycle_n(n: usize, c: usize, d: usize) -> Result<Generated, GenError> {
    let expected = util_cycle_lower(n, c, d)?;
    let m = expected.params.m;
    Ok(with_lower(
        build(Graph::cycle(m)?, cyclic_rows(m, n))?,
        expected,
    ))
}

/// Three items on a path: agent 0 on both ends, every other agent on the
/// middle.
pub fn gen_util_path_m3(n: usize) -> Result<Generated, GenError> {
    if n < 2 {
        return Err(out_of_range("needs at least 2 agents"));
    }
    let g = Graph::path(3)?;
    let mut rows = vec![spread([0, 2])];
    rows.extend((1..n).map(|_| vec![(1, int(1))]));
    let inst = build(g, rows)?;
    make(WelfareKind::Util, GraphClass::Path, Params::mn(3, n), inst)
}
