//! Turning an arbitrary instance into a disjoint-valued one and choosing
//! the constructive algorithm with the best guarantee.

use poc_core::harness::random::{random_instance, seeded};
use poc_core::harness::{constructive_egal, GraphSpec};
use poc_core::instance::reduce_to_disjoint;
use poc_core::oracle::{opt_egal_unconstrained, SearchOptions};
use poc_core::rational::format_rational as f;

fn main() {
    let mut rng = seeded(5);
    let opts = SearchOptions::default();
    for spec in [
        "path:8",
        "cycle:8",
        "star:7",
        "spider:3,2",
        "cmm:6,2",
        "bipartite:3,3",
        "net",
    ] {
        let g = spec.parse::<GraphSpec>().unwrap().build().unwrap();
        let inst = random_instance(&mut rng, &g, 2, 0.3);

        let base = opt_egal_unconstrained(&inst, opts).unwrap();
        let reduced = reduce_to_disjoint(&inst, &base.witness).unwrap();
        assert!(reduced.is_disjoint_valued());

        let c = constructive_egal(&inst, opts).unwrap();
        println!(
            "{spec:<14} {:<22} welfare {:>6}  optimum {:>6}  factor {:>4}  ok={}",
            c.algorithm,
            f(&c.welfare),
            f(&c.opt_egal),
            f(&c.factor),
            c.within_factor()
        );
    }
}
