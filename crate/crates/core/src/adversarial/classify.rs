use super::{formula, GraphClass, Params, PocFormula, WelfareKind};
use crate::constructive::{cycle_order, path_order};
use crate::graph::{
    block_decomposition, delta_pair, max_components_one_removal, vertex_connectivity, Graph,
};

pub fn is_complete(g: &Graph) -> bool {
    let m = g.vertex_count();
    g.edge_count() == m * (m - 1) / 2
}

fn is_star(g: &Graph) -> bool {
    let m = g.vertex_count();
    m >= 3 && g.is_tree() && g.max_degree() == m - 1
}

/// The tightest formula known for `g` with `n` agents: the exact value
/// when the graph lies in a class with one, otherwise the best upper bound.
/// Complete graphs get the exact value 1 since every allocation is
/// connected.
pub fn formula_for_graph(kind: WelfareKind, g: &Graph, n: usize) -> PocFormula {
    let m = g.vertex_count();
    let base = Params::mn(m, n);
    let get =
        |class, params| formula(kind, class, params).expect("classified parameters are in range");
    if n == 1 || is_complete(g) {
        let mut f = get(GraphClass::Generic, base);
        f.value = 1.into();
        f.tag = super::BoundTag::Exact;
        return f;
    }
    if kind == WelfareKind::Egal && m < n {
        return get(GraphClass::Generic, base);
    }
    if n == 2 {
        if let Some(pairs) = crate::constructive::missing_matching_pairs(g) {
            return get(
                GraphClass::CompleteMinusMatching,
                Params {
                    matching: pairs,
                    ..base
                },
            );
        }
        if let Some((x, y)) = crate::constructive::bipartite_side_sizes(g) {
            if x.min(y) >= 2 {
                return get(GraphClass::CompleteBipartite, Params { x, y, ..base });
            }
        }
    }
    let tree = g.is_tree();
    let path = path_order(g).is_some();
    let cycle = cycle_order(g).is_some();
    match kind {
        WelfareKind::Egal => {
            if cycle {
                return get(GraphClass::Cycle, base);
            }
            if n == 2 {
                return match vertex_connectivity(g) {
                    1 if tree => get(
                        GraphClass::Tree,
                        Params {
                            d: g.max_degree(),
                            ..base
                        },
                    ),
                    1 => get(
                        GraphClass::Connectivity1,
                        Params {
                            d: max_components_one_removal(g),
                            block_path: block_decomposition(g).is_path(),
                            ..base
                        },
                    ),
                    2 => get(GraphClass::Connectivity2, base),
                    _ => get(GraphClass::Generic, base),
                };
            }
            if n == 3 && tree && m >= 3 {
                let delta = delta_pair(g)
                    .expect("trees with three vertices have a pair")
                    .delta();
                return get(GraphClass::Tree, Params { delta, ..base });
            }
            if path {
                get(GraphClass::Path, base)
            } else if is_star(g) {
                get(GraphClass::Star, base)
            } else {
                get(GraphClass::Generic, base)
            }
        }
        WelfareKind::Util => {
            if n == 2 && tree {
                return get(GraphClass::Tree, base);
            }
            if cycle {
                get(GraphClass::Cycle, base)
            } else if path {
                get(GraphClass::Path, base)
            } else if is_star(g) {
                get(GraphClass::Star, base)
            } else {
                get(GraphClass::Generic, base)
            }
        }
    }
}
