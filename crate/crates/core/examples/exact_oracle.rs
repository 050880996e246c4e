//! Exact optima by exhaustive search, including counting connected
//! allocations and what happens when the node budget runs out.

use poc_core::graph::Graph;
use poc_core::instance::Instance;
use poc_core::oracle::{
    best_connected_egal, best_connected_util, count_connected_allocations, opt_egal_unconstrained,
    welfare_report, OracleError, SearchOptions,
};
use poc_core::rational::{format_rational as f, frac, int};

fn main() {
    // a star whose centre only agent 0 wants: every connected allocation
    // hands agent 1 at most one leaf
    let g = Graph::star(5).unwrap();
    let (z, q) = (int(0), frac(1, 4));
    let inst =
        Instance::normalized(g, vec![vec![int(1), z, z, z, z], vec![z, q, q, q, q]]).unwrap();
    let opts = SearchOptions::default();
    println!(
        "connected allocations: {}",
        count_connected_allocations(inst.graph(), 2, opts.budget).unwrap()
    );
    println!(
        "egal optimum {}",
        f(&opt_egal_unconstrained(&inst, opts).unwrap().value)
    );
    let ce = best_connected_egal(&inst, opts).unwrap();
    println!(
        "best connected egal {} via {:?}",
        f(&ce.value),
        ce.witness.bundles
    );
    println!(
        "best connected util {}",
        f(&best_connected_util(&inst, opts).unwrap().value)
    );

    // parallel search returns the same optimum
    let par = welfare_report(&inst, opts.parallel(true)).unwrap();
    println!(
        "egal PoC {} util PoC {}",
        f(&par.egal_ratio),
        f(&par.util_ratio)
    );

    // the budget is a hard limit, never a silent approximation
    let k8 =
        Instance::normalized(Graph::complete(8).unwrap(), vec![vec![frac(1, 8); 8]; 3]).unwrap();
    match best_connected_egal(&k8, SearchOptions::with_budget(1000)) {
        Err(OracleError::BudgetExceeded(b)) => println!("K8 with budget {b}: gave up"),
        other => println!("unexpected: {other:?}"),
    }
    let full = best_connected_egal(&k8, opts).unwrap();
    println!("K8 with the default budget: {}", f(&full.value));
}
