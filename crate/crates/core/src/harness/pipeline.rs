//! Egalitarian allocations with a guarantee for arbitrary instances: take
//! an unconstrained egalitarian optimum, keep each agent's values on her
//! own bundle only, run the class algorithm on that disjoint-valued
//! instance and hand its allocation back to the original agents.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::adversarial::is_complete;
use crate::constructive::{
    alg1_connectivity1_2, alg1_gamma, best_item_seeds, bipartite_side_sizes, bipolar_split_2,
    complete_bipartite_egal_2, complete_minus_matching_2, cycle_egal_n, cycle_order,
    disjoint_opt_egal, matching_guarantee, missing_matching_pairs, moving_knife_path, path_order,
    tree_3_allocation, ConstructError,
};
use crate::graph::{bipolar_ordering, delta_formula, vertex_connectivity, Graph};
use crate::instance::{egal_welfare, reduce_to_disjoint, Allocation, Instance};
use crate::oracle::{opt_egal_unconstrained, OracleError, SearchOptions};
use crate::rational::{format_rational, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("no constructive algorithm covers this graph and agent count")]
    NoAlgorithm,
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constructed {
    pub algorithm: &'static str,
    pub allocation: Allocation,
    /// Egalitarian welfare of the allocation in the original instance.
    pub welfare: Rational,
    pub opt_egal: Rational,
    /// The algorithm promises `opt_egal ≤ factor · welfare`.
    pub factor: Rational,
}

impl Constructed {
    pub fn within_factor(&self) -> bool {
        self.opt_egal <= self.factor * self.welfare
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructedSummary {
    pub algorithm: &'static str,
    pub bundles: Vec<Vec<usize>>,
    pub welfare: String,
    pub opt_egal: String,
    pub factor: String,
}

impl Constructed {
    pub fn summary(&self) -> ConstructedSummary {
        ConstructedSummary {
            algorithm: self.algorithm,
            bundles: self.allocation.bundles.iter().map(|b| b.to_vec()).collect(),
            welfare: format_rational(&self.welfare),
            opt_egal: format_rational(&self.opt_egal),
            factor: format_rational(&self.factor),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Algo {
    SingleAgent,
    Matching,
    Bipartite,
    Alg1,
    Bipolar,
    Tree3,
    Knife,
    CycleKnife,
    Seeds,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::SingleAgent => "single agent",
            Algo::Matching => "complete minus matching",
            Algo::Bipartite => "complete bipartite",
            Algo::Alg1 => "algorithm 1",
            Algo::Bipolar => "bipolar split",
            Algo::Tree3 => "tree, three agents",
            Algo::Knife => "moving knife",
            Algo::CycleKnife => "cycle knife",
            Algo::Seeds => "best-item seeds",
        }
    }
}

/// Applicable algorithms and their factors, in order of preference on ties.
fn candidates(g: &Graph, n: usize) -> Vec<(Algo, Rational)> {
    let m = g.vertex_count();
    let mut out = Vec::new();
    if n == 1 {
        out.push((Algo::SingleAgent, int(1)));
    }
    if n == 2 {
        if let Some(k) = missing_matching_pairs(g) {
            out.push((Algo::Matching, int(1) / matching_guarantee(m, k)));
        }
        if let Some((x, y)) = bipartite_side_sizes(g) {
            let x = x.min(y) as i128;
            if x >= 2 {
                out.push((Algo::Bipartite, Rational::new(x, x - 1)));
            }
        }
        if g.vertex_count() >= 2 && bipolar_ordering(g).is_some() {
            out.push((Algo::Bipolar, int(2)));
        }
        if m >= 2 && vertex_connectivity(g) == 1 {
            out.push((Algo::Alg1, int(alg1_gamma(g) as i128)));
        }
    }
    if n == 3 && m >= 5 && g.is_tree() {
        if let Ok(delta) = delta_formula(g) {
            out.push((Algo::Tree3, int(delta as i128)));
        }
    }
    if path_order(g).is_some() {
        out.push((Algo::Knife, int(n as i128)));
    }
    if cycle_order(g).is_some() && m + 2 >= 2 * n {
        let f = if m >= n * n { n } else { n - 1 };
        out.push((Algo::CycleKnife, int(f as i128)));
    }
    if m >= n {
        out.push((Algo::Seeds, int((m - n + 1) as i128)));
    }
    out
}

fn run(algo: Algo, reduced: &Instance) -> Result<Allocation, ConstructError> {
    let n = reduced.agent_count();
    match algo {
        Algo::SingleAgent => Ok(Allocation::all_to(reduced, 0)),
        Algo::Matching => complete_minus_matching_2(reduced),
        Algo::Bipartite => complete_bipartite_egal_2(reduced),
        Algo::Alg1 => alg1_connectivity1_2(reduced),
        Algo::Bipolar => {
            let ord = bipolar_ordering(reduced.graph()).expect("checked when listed");
            bipolar_split_2(reduced, &ord)
        }
        Algo::Tree3 => tree_3_allocation(reduced),
        Algo::Knife => moving_knife_path(reduced, disjoint_opt_egal(reduced) / int(n as i128)),
        Algo::CycleKnife => cycle_egal_n(reduced),
        Algo::Seeds => best_item_seeds(reduced),
    }
}

/// Runs the best-guaranteed algorithm for the instance's graph on the
/// reduction of an egalitarian optimum.
pub fn constructive_egal(
    inst: &Instance,
    opts: SearchOptions,
) -> Result<Constructed, PipelineError> {
    let opt = opt_egal_unconstrained(inst, opts)?;
    if opt.value.is_zero() {
        // nothing to guarantee; any connected allocation will do
        return Ok(Constructed {
            algorithm: "trivial",
            allocation: Allocation::all_to(inst, 0),
            welfare: egal_welfare(inst, &Allocation::all_to(inst, 0)),
            opt_egal: opt.value,
            factor: Rational::one(),
        });
    }
    if is_complete(inst.graph()) {
        // every bundle of a complete graph is connected
        return Ok(Constructed {
            algorithm: "complete graph",
            welfare: opt.value,
            allocation: opt.witness,
            opt_egal: opt.value,
            factor: Rational::one(),
        });
    }
    let reduced =
        reduce_to_disjoint(inst, &opt.witness).expect("the optimum is a valid allocation");
    let mut best: Option<(Algo, Rational)> = None;
    for (a, f) in candidates(inst.graph(), inst.agent_count()) {
        if best.map_or(true, |(_, g)| f < g) {
            best = Some((a, f));
        }
    }
    let (algo, factor) = best.ok_or(PipelineError::NoAlgorithm)?;
    let allocation = run(algo, &reduced)?;
    Ok(Constructed {
        algorithm: algo.name(),
        welfare: egal_welfare(inst, &allocation),
        allocation,
        opt_egal: opt.value,
        factor,
    })
}
