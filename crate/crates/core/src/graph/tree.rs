use std::collections::VecDeque;

use super::{Graph, GraphError, VertexSet};

/// A spanning tree with a designated root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    pub root: usize,
    /// `parent[root]` is `None`.
    pub parent: Vec<Option<usize>>,
    /// Children of each vertex in ascending order.
    pub children: Vec<Vec<usize>>,
}

impl RootedTree {
    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    /// The vertex set of the subtree hanging from `v`, `v` included.
    pub fn subtree(&self, v: usize) -> VertexSet {
        let mut out = VertexSet::singleton(v);
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for &c in &self.children[x] {
                out.insert(c);
                stack.push(c);
            }
        }
        out
    }

    /// One subtree per child of the root, in child order. Together they
    /// partition the vertices other than the root.
    pub fn top_level_subtrees(&self) -> Vec<VertexSet> {
        self.children[self.root]
            .iter()
            .map(|&c| self.subtree(c))
            .collect()
    }

    /// Tree edges as `(parent, child)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                out.push((*p, v));
            }
        }
        out
    }

    /// The tree as a graph on the same vertex labels.
    pub fn to_graph(&self) -> Graph {
        Graph::new(self.vertex_count(), &self.edges()).expect("a rooted tree is a connected graph")
    }
}

/// Breadth-first spanning tree from `root`, visiting neighbours in
/// ascending order.
pub fn spanning_tree(g: &Graph, root: usize) -> Result<RootedTree, GraphError> {
    g.check_vertex(root)?;
    let n = g.vertex_count();
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut seen = VertexSet::singleton(root);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v).difference(seen) {
            seen.insert(w);
            parent[w] = Some(v);
            children[v].push(w);
            queue.push_back(w);
        }
    }
    Ok(RootedTree {
        root,
        parent,
        children,
    })
}
