use serde::Serialize;

use crate::adversarial::{formula_for_graph, PocFormula, WelfareKind};
use crate::graph::{
    bipolar_ordering, block_decomposition, delta_formula, is_two_linked,
    max_components_one_removal, max_components_two_removals, vertex_connectivity, Graph,
};

/// Two-linkedness is only checked up to this many vertices.
pub const TWO_LINKED_LIMIT: usize = 10;

/// Structural quantities of a graph and the formula entries for `n` agents.
#[derive(Debug, Clone, Serialize)]
pub struct GraphReport {
    pub vertices: usize,
    pub edges: usize,
    pub agents: usize,
    pub connectivity: usize,
    /// Most components left by removing one vertex.
    pub d: usize,
    /// Most components left by removing two vertices, when there are at
    /// least three vertices.
    pub d2: Option<usize>,
    /// `δ` for trees.
    pub delta: Option<usize>,
    pub cut_vertices: Vec<usize>,
    pub block_cut_tree_is_path: bool,
    pub bipolar_ordering: Option<Vec<usize>>,
    pub two_linked: Option<bool>,
    pub egal: PocFormula,
    pub util: PocFormula,
}

pub fn graph_report(g: &Graph, n: usize) -> GraphReport {
    let bd = block_decomposition(g);
    GraphReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        agents: n,
        connectivity: vertex_connectivity(g),
        d: max_components_one_removal(g),
        d2: max_components_two_removals(g).ok(),
        delta: delta_formula(g).ok(),
        cut_vertices: bd.cut_vertex_list(),
        block_cut_tree_is_path: bd.is_path(),
        bipolar_ordering: bipolar_ordering(g),
        two_linked: (g.vertex_count() <= TWO_LINKED_LIMIT).then(|| is_two_linked(g)),
        egal: formula_for_graph(WelfareKind::Egal, g, n),
        util: formula_for_graph(WelfareKind::Util, g, n),
    }
}
