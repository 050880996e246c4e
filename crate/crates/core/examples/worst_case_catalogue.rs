//! Worst-case instances: generate a few, confirm the oracle measures the
//! predicted ratio, then run a small slice of the full catalogue.

use poc_core::adversarial::*;
use poc_core::graph::Graph;
use poc_core::harness::{
    exact_catalogue, lower_catalogue, measured_ratio, summarize, verify_cases, Limits,
};
use poc_core::oracle::SearchOptions;
use poc_core::rational::format_rational as f;

fn check(label: &str, g: Result<Generated, GenError>) {
    let g = g.expect("parameters are in range");
    let got = measured_ratio(&g.instance, g.expected.kind, SearchOptions::default()).unwrap();
    println!(
        "{label:<28} {} {:<8} predicted {:>5} ({}), measured {:>5}",
        g.expected.kind,
        g.expected.class.to_string(),
        f(&g.expected.value),
        g.expected.tag,
        f(&got)
    );
}

fn main() {
    check("star, m=6 n=3", gen_egal_star(6, 3));
    check("path, m=7 n=3", gen_egal_path(7, 3));
    check("cycle, m=9 n=3", gen_egal_cycle(9, 3));
    check(
        "K6 minus 3 edges",
        gen_egal_complete_minus_matching(6, 3, MatchingVariant::for_graph(6, 3)),
    );
    check("K2,4", gen_egal_complete_bipartite(2, 4));
    check(
        "spider tree, 3 agents",
        gen_egal_tree_3(&Graph::spider(3, 2).unwrap()),
    );
    check(
        "util tree, spider",
        gen_util_tree(&Graph::spider(3, 2).unwrap()),
    );
    check("util cycle, m=8", gen_util_cycle_2(8));
    check("util star, n=3 c=2 d=1", gen_util_star_n(3, 2, 1));

    // the formula table alone
    let p = formula(WelfareKind::Util, GraphClass::Path, Params::mn(9, 3)).unwrap();
    println!("util path m=9 n=3: {} ({})", f(&p.value), p.tag);

    let mut cases = exact_catalogue(Limits::new(6, 3), 5);
    cases.extend(lower_catalogue(&[2, 3], &[1, 2], &[0, 1]));
    let rows = verify_cases(&cases, SearchOptions::default(), 0);
    let (failed, budget) = summarize(&rows);
    println!(
        "{} catalogue cases, {failed} failed, budget exceeded: {budget}",
        rows.len()
    );
}
