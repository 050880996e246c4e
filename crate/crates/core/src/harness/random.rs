//! Seeded random graphs and utility profiles.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::adversarial::GraphClass;
use crate::graph::{vertex_connectivity, Graph};
use crate::instance::Instance;
use crate::rational::{int, Rational};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random recursive tree: vertex `v` hangs off a random earlier
/// vertex, then labels are shuffled.
pub fn random_tree<R: Rng>(rng: &mut R, m: usize) -> Graph {
    let mut label: Vec<usize> = (0..m).collect();
    label.shuffle(rng);
    let edges: Vec<_> = (1..m)
        .map(|v| (label[rng.gen_range(0..v)], label[v]))
        .collect();
    Graph::new(m, &edges).expect("a tree is connected")
}

/// A random tree plus each remaining pair with probability `p`.
pub fn random_connected_graph<R: Rng>(rng: &mut R, m: usize, p: f64) -> Graph {
    let tree = random_tree(rng, m);
    let mut edges = tree.edges();
    for a in 0..m {
        for b in a + 1..m {
            if !tree.has_edge(a, b) && rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(m, &edges).expect("contains a spanning tree")
}

/// A random graph from `class` with `m` vertices, or `None` when the class
/// has no member of that size. Connectivity classes are sampled by
/// rejection.
pub fn random_class_graph<R: Rng>(rng: &mut R, class: GraphClass, m: usize) -> Option<Graph> {
    let g = match class {
        GraphClass::CompleteMinusMatching => {
            if m < 3 {
                return None;
            }
            Graph::complete_minus_matching(m, rng.gen_range(1..=m / 2)).ok()?
        }
        GraphClass::CompleteBipartite => {
            if m < 2 {
                return None;
            }
            let x = rng.gen_range(1..m);
            Graph::complete_bipartite(x, m - x).ok()?
        }
        GraphClass::Connectivity1 | GraphClass::Connectivity2 => {
            let want = if class == GraphClass::Connectivity1 {
                1
            } else {
                2
            };
            if m < want + 2 {
                return None;
            }
            loop {
                let p = rng.gen_range(0.1..0.7);
                let g = random_connected_graph(rng, m, p);
                if vertex_connectivity(&g) == want {
                    break g;
                }
            }
        }
        GraphClass::Tree => random_tree(rng, m),
        GraphClass::Star => Graph::star(m).ok()?,
        GraphClass::Path => Graph::path(m).ok()?,
        GraphClass::Cycle => Graph::cycle(m).ok()?,
        GraphClass::Generic => {
            let p = rng.gen_range(0.0..0.8);
            random_connected_graph(rng, m, p)
        }
    };
    Some(g)
}

/// Random integer weights in `0..=6`, zero with probability `zero_p`, then
/// normalized. An agent drawing all zeros gets one random vertex.
pub fn random_instance<R: Rng>(rng: &mut R, g: &Graph, n: usize, zero_p: f64) -> Instance {
    let m = g.vertex_count();
    let utilities = (0..n)
        .map(|_| {
            let mut w: Vec<i128> = (0..m)
                .map(|_| {
                    if rng.gen_bool(zero_p) {
                        0
                    } else {
                        rng.gen_range(1..=6)
                    }
                })
                .collect();
            if w.iter().all(|&x| x == 0) {
                w[rng.gen_range(0..m)] = 1;
            }
            let total: i128 = w.iter().sum();
            w.into_iter().map(|x| Rational::new(x, total)).collect()
        })
        .collect();
    Instance::normalized(g.clone(), utilities).expect("rows sum to 1")
}

/// Disjoint-valued and unnormalized: each vertex is left unvalued with
/// probability `unvalued_p`, otherwise given to a random agent with weight
/// in `1..=9`.
pub fn random_disjoint_instance<R: Rng>(
    rng: &mut R,
    g: &Graph,
    n: usize,
    unvalued_p: f64,
) -> Instance {
    let m = g.vertex_count();
    let mut utilities = vec![vec![int(0); m]; n];
    for v in 0..m {
        if !rng.gen_bool(unvalued_p) {
            utilities[rng.gen_range(0..n)][v] = int(rng.gen_range(1..=9));
        }
    }
    Instance::unnormalized(g.clone(), utilities).expect("non-negative")
}

/// Disjoint-valued and normalized: every vertex goes to one random agent
/// with weight in `1..=6` (or to nobody with probability `unvalued_p`); an
/// agent left without vertices takes over a random one.
pub fn random_disjoint_normalized<R: Rng>(
    rng: &mut R,
    g: &Graph,
    n: usize,
    unvalued_p: f64,
) -> Instance {
    let m = g.vertex_count();
    let mut owner: Vec<Option<usize>> = (0..m)
        .map(|_| (!rng.gen_bool(unvalued_p)).then(|| rng.gen_range(0..n)))
        .collect();
    for a in 0..n.min(m) {
        if !owner.contains(&Some(a)) {
            let free: Vec<usize> = (0..m)
                .filter(|&v| {
                    owner[v].map_or(true, |b| {
                        owner.iter().filter(|&&o| o == Some(b)).count() > 1
                    })
                })
                .collect();
            if let Some(&v) = free.choose(rng) {
                owner[v] = Some(a);
            }
        }
    }
    let mut w = vec![vec![0i128; m]; n];
    for (v, o) in owner.iter().enumerate() {
        if let Some(a) = *o {
            w[a][v] = rng.gen_range(1..=6);
        }
    }
    let utilities = w
        .into_iter()
        .map(|row| {
            let total: i128 = row.iter().sum();
            if total == 0 {
                // more agents than vertices: spread evenly
                vec![Rational::new(1, m as i128); m]
            } else {
                row.into_iter().map(|x| Rational::new(x, total)).collect()
            }
        })
        .collect();
    Instance::normalized(g.clone(), utilities).expect("rows sum to 1")
}
