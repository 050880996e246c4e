//! Exhaustive enumeration of small connected graphs and trees up to
//! isomorphism, for structural sweeps.
//!
//! Both enumerations grow graphs one vertex at a time: every connected
//! graph has a vertex whose removal keeps it connected, and every tree has a
//! leaf. Duplicates are removed through a canonical adjacency code.

use std::collections::BTreeSet;

use super::{Graph, VertexSet};

/// Largest vertex count accepted by the enumerators.
pub const MAX_ENUMERATION_VERTICES: usize = 16;

/// All connected graphs with `1..=max_vertices` vertices, one per
/// isomorphism class, ordered by vertex count.
pub fn connected_graphs(max_vertices: usize) -> Vec<Graph> {
    grow(max_vertices, |prev, _| {
        (1u64..(1 << prev)).map(VertexSet).collect()
    })
}

/// All trees with `1..=max_vertices` vertices, one per isomorphism class,
/// ordered by vertex count.
pub fn trees(max_vertices: usize) -> Vec<Graph> {
    grow(max_vertices, |prev, _| {
        (0..prev).map(VertexSet::singleton).collect()
    })
}

fn grow(max_vertices: usize, attach: impl Fn(usize, &Graph) -> Vec<VertexSet>) -> Vec<Graph> {
    assert!(
        max_vertices <= MAX_ENUMERATION_VERTICES,
        "enumeration is limited to {MAX_ENUMERATION_VERTICES} vertices"
    );
    let mut out = Vec::new();
    if max_vertices == 0 {
        return out;
    }
    let mut level = vec![Graph::path(1).unwrap()];
    out.extend(level.iter().cloned());
    for n in 2..=max_vertices {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            for nb in attach(n - 1, g) {
                let mut edges = g.edges();
                edges.extend(nb.iter().map(|v| (v, n - 1)));
                let h = Graph::new(n, &edges).unwrap();
                let code = canonical_code(&h);
                if seen.insert(code) {
                    next.push((code, h));
                }
            }
        }
        next.sort_by_key(|(c, _)| *c);
        level = next.into_iter().map(|(_, h)| h).collect();
        out.extend(level.iter().cloned());
    }
    out
}

/// Isomorphism-invariant code: the largest upper-triangle adjacency word
/// over all labelings reachable by colour refinement and individualisation.
pub fn canonical_code(g: &Graph) -> u128 {
    let n = g.vertex_count();
    assert!(n <= MAX_ENUMERATION_VERTICES);
    let colours = refine(g, vec![0; n]);
    let mut best = 0;
    search(g, colours, &mut best);
    best
}

fn search(g: &Graph, colours: Vec<usize>, best: &mut u128) {
    let n = g.vertex_count();
    let mut sizes = vec![0usize; n];
    for &c in &colours {
        sizes[c] += 1;
    }
    let target = (0..n)
        .filter(|&c| sizes[c] > 1)
        .min_by_key(|&c| (sizes[c], c));
    match target {
        None => {
            let code = adjacency_word(g, &colours);
            *best = (*best).max(code);
        }
        Some(cell) => {
            for v in (0..n).filter(|&v| colours[v] == cell) {
                let split = colours
                    .iter()
                    .enumerate()
                    .map(|(x, &c)| 2 * c + usize::from(c == cell && x != v))
                    .collect();
                search(g, refine(g, split), best);
            }
        }
    }
}

/// Bit `k` of the word is set when the `k`-th position pair is an edge,
/// reading pairs `(i, j)`, `i < j`, in lexicographic order.
fn adjacency_word(g: &Graph, position: &[usize]) -> u128 {
    let n = g.vertex_count();
    let mut at = vec![0; n];
    for (v, &p) in position.iter().enumerate() {
        at[p] = v;
    }
    let mut word = 0u128;
    for i in 0..n {
        for j in i + 1..n {
            word <<= 1;
            if g.has_edge(at[i], at[j]) {
                word |= 1;
            }
        }
    }
    word
}

/// Colour refinement to a stable partition. Colours are renumbered
/// `0..k` by sorting vertex signatures, so the result does not depend on
/// vertex labels.
fn refine(g: &Graph, mut colours: Vec<usize>) -> Vec<usize> {
    let n = g.vertex_count();
    colours = renumber(colours.iter().map(|&c| vec![c]).collect());
    loop {
        let k = colours.iter().max().map_or(0, |m| m + 1);
        let sigs: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut s = vec![0; k + 1];
                s[0] = colours[v];
                for w in g.neighbors(v) {
                    s[colours[w] + 1] += 1;
                }
                s
            })
            .collect();
        let next = renumber(sigs);
        let k2 = next.iter().max().map_or(0, |m| m + 1);
        colours = next;
        if k2 == k {
            return colours;
        }
    }
}

fn renumber(sigs: Vec<Vec<usize>>) -> Vec<usize> {
    let distinct: BTreeSet<&Vec<usize>> = sigs.iter().collect();
    let rank: Vec<&Vec<usize>> = distinct.into_iter().collect();
    sigs.iter()
        .map(|s| rank.binary_search(&s).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts_of_connected_graphs() {
        let all = connected_graphs(6);
        let mut counts = [0usize; 7];
        for g in &all {
            counts[g.vertex_count()] += 1;
        }
        assert_eq!(counts, [0, 1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn known_counts_of_trees() {
        let all = trees(9);
        let mut counts = [0usize; 10];
        for g in &all {
            assert!(g.is_tree());
            counts[g.vertex_count()] += 1;
        }
        assert_eq!(counts, [0, 1, 1, 1, 2, 3, 6, 11, 23, 47]);
    }

    #[test]
    fn relabelling_keeps_the_code() {
        let a = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 2)]).unwrap();
        let b = Graph::new(5, &[(4, 3), (3, 2), (2, 1), (1, 0), (4, 2)]).unwrap();
        assert_eq!(canonical_code(&a), canonical_code(&b));
        assert_ne!(
            canonical_code(&a),
            canonical_code(&Graph::cycle(5).unwrap())
        );
    }
}
