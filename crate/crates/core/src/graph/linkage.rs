use super::{Graph, GraphError, VertexSet};

/// True iff there are vertex-disjoint paths joining `a` to `b` and `c` to
/// `d`.
///
/// Enumerates simple `a`-`b` paths avoiding `c` and `d` and checks whether
/// `c` still reaches `d` in what is left.
pub fn is_two_linked_pairs(
    g: &Graph,
    a: usize,
    b: usize,
    c: usize,
    d: usize,
) -> Result<bool, GraphError> {
    for v in [a, b, c, d] {
        g.check_vertex(v)?;
    }
    if VertexSet::from_vertices([a, b, c, d]).len() != 4 {
        return Err(GraphError::NonDistinctVertices);
    }
    let allowed = g.vertices().without(c).without(d);
    Ok(paths_from(
        g,
        a,
        b,
        VertexSet::singleton(a),
        allowed,
        &mut |path| {
            let rest = g.vertices().difference(path);
            g.reach_within(c, rest).contains(d)
        },
    ))
}

/// Depth-first enumeration of simple paths from `v` to `target` inside
/// `allowed`; stops as soon as `accept` returns true.
fn paths_from(
    g: &Graph,
    v: usize,
    target: usize,
    path: VertexSet,
    allowed: VertexSet,
    accept: &mut impl FnMut(VertexSet) -> bool,
) -> bool {
    if v == target {
        return accept(path);
    }
    for w in g.neighbors(v).intersection(allowed).difference(path) {
        if paths_from(g, w, target, path.with(w), allowed, accept) {
            return true;
        }
    }
    false
}

/// True iff every two disjoint vertex pairs can be joined by disjoint
/// paths. Graphs with fewer than four vertices are vacuously 2-linked.
pub fn is_two_linked(g: &Graph) -> bool {
    let n = g.vertex_count();
    for a in 0..n {
        for b in a + 1..n {
            for c in a + 1..n {
                if c == b {
                    continue;
                }
                for d in c + 1..n {
                    if d == b {
                        continue;
                    }
                    // a is the smallest of the four; c < d fixes the pairing.
                    if !is_two_linked_pairs(g, a, b, c, d).unwrap() {
                        return false;
                    }
                }
            }
        }
    }
    true
}
