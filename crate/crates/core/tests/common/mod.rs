//! Brute-force reference computations shared by the integration tests.
//! They only use the graph's edge list and the utility matrix, never the
//! library's search code.

#![allow(dead_code)]

use poc_core::graph::Graph;
use poc_core::instance::{Allocation, Instance};
use poc_core::rational::{int, Rational};

pub fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for (a, b) in g.edges() {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

/// Whether `set` (as a membership mask) induces a connected subgraph; the
/// empty set counts as connected.
pub fn connected(adj: &[Vec<usize>], set: &[bool]) -> bool {
    let Some(start) = set.iter().position(|&b| b) else {
        return true;
    };
    let mut seen = vec![false; set.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if set[w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    set.iter().zip(&seen).all(|(&s, &r)| !s || r)
}

/// Number of components left after deleting `removed`.
pub fn components_without(adj: &[Vec<usize>], removed: &[usize]) -> usize {
    let n = adj.len();
    let mut seen = vec![false; n];
    for &r in removed {
        seen[r] = true;
    }
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Largest number of components after deleting two vertices.
pub fn brute_two_removal(g: &Graph) -> usize {
    let adj = adjacency(g);
    let n = g.vertex_count();
    let mut best = 0;
    for a in 0..n {
        for b in a + 1..n {
            best = best.max(components_without(&adj, &[a, b]));
        }
    }
    best
}

pub fn is_connected_allocation(inst: &Instance, alloc: &Allocation) -> bool {
    let adj = adjacency(inst.graph());
    let m = inst.item_count();
    let mut owner = vec![None; m];
    for (i, b) in alloc.bundles.iter().enumerate() {
        for v in b.iter() {
            if v >= m || owner[v].is_some() {
                return false;
            }
            owner[v] = Some(i);
        }
    }
    owner.iter().all(Option::is_some)
        && alloc.bundles.iter().all(|b| {
            let mask: Vec<bool> = (0..m).map(|v| b.contains(v)).collect();
            connected(&adj, &mask)
        })
}

pub fn utility_of(inst: &Instance, agent: usize, bundle: &[bool]) -> Rational {
    (0..inst.item_count())
        .filter(|&v| bundle[v])
        .map(|v| inst.utility(agent, v))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Naive {
    pub egal: Rational,
    pub util: Rational,
    pub connected_egal: Rational,
    pub connected_util: Rational,
    pub connected_count: u64,
}

/// Enumerates all `n^m` assignments.
pub fn naive(inst: &Instance) -> Naive {
    let n = inst.agent_count();
    let m = inst.item_count();
    let adj = adjacency(inst.graph());
    let mut owner = vec![0usize; m];
    let mut out = Naive {
        egal: int(-1),
        util: int(-1),
        connected_egal: int(-1),
        connected_util: int(-1),
        connected_count: 0,
    };
    loop {
        let masks: Vec<Vec<bool>> = (0..n)
            .map(|i| owner.iter().map(|&o| o == i).collect())
            .collect();
        let values: Vec<Rational> = (0..n).map(|i| utility_of(inst, i, &masks[i])).collect();
        let egal = values.iter().copied().min().unwrap();
        let util: Rational = values.iter().copied().sum();
        out.egal = out.egal.max(egal);
        out.util = out.util.max(util);
        if masks.iter().all(|mk| connected(&adj, mk)) {
            out.connected_count += 1;
            out.connected_egal = out.connected_egal.max(egal);
            out.connected_util = out.connected_util.max(util);
        }
        // next assignment in base n
        let mut k = 0;
        loop {
            if k == m {
                return out;
            }
            owner[k] += 1;
            if owner[k] < n {
                break;
            }
            owner[k] = 0;
            k += 1;
        }
    }
}

/// Ratio with 0/0 read as 1.
pub fn ratio(opt: Rational, conn: Rational) -> Rational {
    if conn == int(0) {
        assert_eq!(opt, int(0));
        int(1)
    } else {
        opt / conn
    }
}

pub mod strategies {
    use poc_core::graph::Graph;
    use poc_core::instance::Instance;
    use poc_core::rational::Rational;
    use proptest::prelude::*;

    /// Connected graph on `min..=max` vertices: a random tree (vertex `v`
    /// hangs off `parent[v] % v`) plus extra edges with probability about
    /// `density`.
    pub fn connected_graph(min: usize, max: usize, density: f64) -> impl Strategy<Value = Graph> {
        (min..=max).prop_flat_map(move |m| {
            let pairs = m * m.saturating_sub(1) / 2;
            (
                proptest::collection::vec(any::<usize>(), m.saturating_sub(1)),
                proptest::collection::vec(proptest::bool::weighted(density), pairs),
            )
                .prop_map(move |(parents, extra)| {
                    let mut edges: Vec<(usize, usize)> =
                        (1..m).map(|v| (parents[v - 1] % v, v)).collect();
                    let mut k = 0;
                    for a in 0..m {
                        for b in a + 1..m {
                            if extra[k] && !edges.contains(&(a, b)) {
                                edges.push((a, b));
                            }
                            k += 1;
                        }
                    }
                    Graph::new(m, &edges).unwrap()
                })
        })
    }

    pub fn tree(min: usize, max: usize) -> impl Strategy<Value = Graph> {
        connected_graph(min, max, 0.0)
    }

    /// Normalized utilities from integer weights in `0..=5`; an all-zero
    /// row puts everything on one vertex.
    pub fn instance_on(g: Graph, n: usize) -> impl Strategy<Value = Instance> {
        let m = g.vertex_count();
        proptest::collection::vec(proptest::collection::vec(0i128..=5, m), n).prop_map(
            move |rows| {
                let utilities = rows
                    .into_iter()
                    .map(|mut w| {
                        if w.iter().all(|&x| x == 0) {
                            w[0] = 1;
                        }
                        let t: i128 = w.iter().sum();
                        w.into_iter().map(|x| Rational::new(x, t)).collect()
                    })
                    .collect();
                Instance::normalized(g.clone(), utilities).unwrap()
            },
        )
    }

    /// Disjoint-valued, unnormalized: vertex `v` goes to `owner[v] % (n+1)`,
    /// value `n` meaning nobody, with weight in `1..=5`.
    pub fn disjoint_on(g: Graph, n: usize) -> impl Strategy<Value = Instance> {
        let m = g.vertex_count();
        proptest::collection::vec((0..=n, 1i128..=5), m).prop_map(move |cells| {
            let mut u = vec![vec![Rational::from_integer(0); m]; n];
            for (v, (o, w)) in cells.into_iter().enumerate() {
                if o < n {
                    u[o][v] = Rational::from_integer(w);
                }
            }
            Instance::unnormalized(g.clone(), u).unwrap()
        })
    }

    pub fn instance(min_m: usize, max_m: usize, max_n: usize) -> impl Strategy<Value = Instance> {
        (connected_graph(min_m, max_m, 0.3), 1..=max_n).prop_flat_map(|(g, n)| instance_on(g, n))
    }
}
