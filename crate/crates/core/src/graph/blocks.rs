use super::{Graph, VertexSet};

/// Blocks and cut vertices of a connected graph, linked as the block-cut
/// tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Maximal 2-connected subgraphs or bridges, sorted by vertex set.
    pub blocks: Vec<VertexSet>,
    pub cut_vertices: VertexSet,
    /// `(block index, cut vertex)` for every cut vertex lying in a block.
    pub incidence: Vec<(usize, usize)>,
}

impl BlockDecomposition {
    /// Cut vertices sorted ascending.
    pub fn cut_vertex_list(&self) -> Vec<usize> {
        self.cut_vertices.to_vec()
    }

    /// Number of tree nodes (blocks plus cut vertices).
    pub fn node_count(&self) -> usize {
        self.blocks.len() + self.cut_vertices.len()
    }

    /// Degree of each block node, then of each cut-vertex node in
    /// ascending vertex order.
    fn node_degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let cuts = self.cut_vertex_list();
        let mut block_deg = vec![0; self.blocks.len()];
        let mut cut_deg = vec![0; cuts.len()];
        for &(b, c) in &self.incidence {
            block_deg[b] += 1;
            cut_deg[cuts
                .binary_search(&c)
                .expect("incidence names a cut vertex")] += 1;
        }
        (block_deg, cut_deg)
    }

    /// True iff every node of the block-cut tree has degree at most 2.
    pub fn is_path(&self) -> bool {
        let (b, c) = self.node_degrees();
        b.iter().chain(c.iter()).all(|&d| d <= 2)
    }

    /// True iff the incidence structure is a tree: connected with
    /// `nodes - 1` links.
    pub fn is_tree(&self) -> bool {
        let nodes = self.node_count();
        if self.incidence.len() + 1 != nodes {
            return false;
        }
        let cuts = self.cut_vertex_list();
        let nb = self.blocks.len();
        let mut parent: Vec<usize> = (0..nodes).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(b, c) in &self.incidence {
            let ci = nb + cuts.binary_search(&c).unwrap();
            let (rb, rc) = (find(&mut parent, b), find(&mut parent, ci));
            if rb == rc {
                return false;
            }
            parent[rb] = rc;
        }
        true
    }
}

/// Hopcroft-Tarjan biconnected components.
pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let n = g.vertex_count();
    if n == 1 {
        return BlockDecomposition {
            blocks: vec![VertexSet::singleton(0)],
            cut_vertices: VertexSet::EMPTY,
            incidence: Vec::new(),
        };
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();
    let mut cut_vertices = VertexSet::EMPTY;

    // Iterative DFS: (vertex, parent, remaining neighbours).
    let mut stack: Vec<(usize, usize, VertexSet)> = vec![(0, usize::MAX, g.neighbors(0))];
    disc[0] = 0;
    low[0] = 0;
    timer += 1;
    let mut root_children = 0;
    while let Some(top) = stack.last_mut() {
        let (v, parent) = (top.0, top.1);
        let next = top.2.first();
        if let Some(w) = next {
            top.2.remove(w);
            if disc[w] == usize::MAX {
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                edge_stack.push((v, w));
                if v == 0 {
                    root_children += 1;
                }
                stack.push((w, v, g.neighbors(w)));
            } else if w != parent && disc[w] < disc[v] {
                low[v] = low[v].min(disc[w]);
                edge_stack.push((v, w));
            }
        } else {
            stack.pop();
            if parent != usize::MAX {
                low[parent] = low[parent].min(low[v]);
                if low[v] >= disc[parent] {
                    if parent != 0 {
                        cut_vertices.insert(parent);
                    }
                    let mut block = VertexSet::EMPTY;
                    while let Some((a, b)) = edge_stack.pop() {
                        block.insert(a);
                        block.insert(b);
                        if (a, b) == (parent, v) {
                            break;
                        }
                    }
                    blocks.push(block);
                }
            }
        }
    }
    if root_children > 1 {
        cut_vertices.insert(0);
    }
    blocks.sort();
    let mut incidence = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for c in b.intersection(cut_vertices) {
            incidence.push((i, c));
        }
    }
    BlockDecomposition {
        blocks,
        cut_vertices,
        incidence,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net() -> Graph {
        Graph::new(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]).unwrap()
    }

    #[test]
    fn path_blocks_are_edges() {
        let bd = block_decomposition(&Graph::path(4).unwrap());
        assert_eq!(bd.blocks.len(), 3);
        assert_eq!(bd.cut_vertex_list(), vec![1, 2]);
        assert!(bd.is_path());
        assert!(bd.is_tree());
    }

    #[test]
    fn cycle_is_one_block() {
        let bd = block_decomposition(&Graph::cycle(6).unwrap());
        assert_eq!(bd.blocks, vec![VertexSet::full(6)]);
        assert!(bd.cut_vertices.is_empty());
        assert!(bd.is_path());
    }

    #[test]
    fn triangle_with_pendants_is_not_a_path() {
        let bd = block_decomposition(&net());
        assert_eq!(bd.blocks.len(), 4);
        assert_eq!(bd.cut_vertex_list(), vec![0, 1, 2]);
        assert!(!bd.is_path());
        assert!(bd.is_tree());
    }

    #[test]
    fn star_and_single_vertex() {
        let bd = block_decomposition(&Graph::star(5).unwrap());
        assert_eq!(bd.blocks.len(), 4);
        assert_eq!(bd.cut_vertex_list(), vec![0]);
        assert!(!bd.is_path());
        let one = block_decomposition(&Graph::path(1).unwrap());
        assert_eq!(one.blocks.len(), 1);
        assert!(one.is_path() && one.is_tree());
    }

    #[test]
    fn bowtie_shares_a_cut_vertex() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let bd = block_decomposition(&g);
        assert_eq!(
            bd.blocks,
            vec![
                VertexSet::from_vertices([0, 1, 2]),
                VertexSet::from_vertices([2, 3, 4])
            ]
        );
        assert_eq!(bd.cut_vertex_list(), vec![2]);
        assert!(bd.is_path());
    }

    #[test]
    fn decomposition_is_always_a_tree() {
        for g in crate::graph::enumerate::connected_graphs(6) {
            let bd = block_decomposition(&g);
            assert!(bd.is_tree(), "{g:?}");
            let covered = bd.blocks.iter().fold(VertexSet::EMPTY, |a, &b| a.union(b));
            assert_eq!(covered, g.vertices());
            for c in bd.cut_vertices {
                assert!(bd.blocks.iter().filter(|b| b.contains(c)).count() >= 2);
            }
        }
    }
}
