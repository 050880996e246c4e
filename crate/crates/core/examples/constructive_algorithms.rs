//! The constructive algorithms on disjoint-valued instances, each checked
//! against the exact egalitarian optimum.

use poc_core::constructive::*;
use poc_core::graph::{bipolar_ordering, Graph};
use poc_core::harness::random::{random_disjoint_instance, random_instance, random_tree, seeded};
use poc_core::instance::{egal_welfare, util_welfare, Allocation, Instance};
use poc_core::oracle::opt_util_unconstrained;
use poc_core::rational::{format_rational as f, Rational};

fn show(name: &str, inst: &Instance, a: Result<Allocation, ConstructError>) {
    let opt = disjoint_opt_egal(inst);
    match a {
        Ok(a) => {
            let w = egal_welfare(inst, &a);
            let bundles: Vec<Vec<usize>> = a.bundles.iter().map(|b| b.to_vec()).collect();
            let ratio = if w == Rational::from_integer(0) {
                "-".to_string()
            } else {
                f(&(opt / w))
            };
            println!(
                "{name:<24} welfare {:>6} of {:>6}  ratio {ratio:>5}  {bundles:?}",
                f(&w),
                f(&opt)
            );
        }
        Err(e) => println!("{name:<24} {e}"),
    }
}

fn main() {
    let mut rng = seeded(7);

    let path = random_disjoint_instance(&mut rng, &Graph::path(9).unwrap(), 3, 0.2);
    let target = disjoint_opt_egal(&path) / Rational::from_integer(3);
    show("knife on a path", &path, moving_knife_path(&path, target));

    let cycle = random_disjoint_instance(&mut rng, &Graph::cycle(10).unwrap(), 3, 0.2);
    show("knife on a cycle", &cycle, cycle_egal_n(&cycle));

    let t = random_tree(&mut rng, 9);
    let tree = random_disjoint_instance(&mut rng, &t, 2, 0.0);
    show("algorithm 1, tree", &tree, alg1_connectivity1_2(&tree));
    let three = random_disjoint_instance(&mut rng, &t, 3, 0.0);
    show("three agents, tree", &three, tree_3_allocation(&three));

    let c6 = Graph::cycle(6).unwrap();
    let order = bipolar_ordering(&c6).unwrap();
    let bip = random_disjoint_instance(&mut rng, &c6, 2, 0.0);
    show("bipolar split", &bip, bipolar_split_2(&bip, &order));

    let cmm = random_disjoint_instance(
        &mut rng,
        &Graph::complete_minus_matching(6, 2).unwrap(),
        2,
        0.0,
    );
    show("K6 minus a matching", &cmm, complete_minus_matching_2(&cmm));

    let kxy = random_disjoint_instance(&mut rng, &Graph::complete_bipartite(3, 4).unwrap(), 2, 0.0);
    show("K3,4", &kxy, complete_bipartite_egal_2(&kxy));

    let seeds = random_disjoint_instance(&mut rng, &Graph::star(7).unwrap(), 3, 0.0);
    show("best-item seeds", &seeds, best_item_seeds(&seeds));

    // the utilitarian two-agent scans accept any valuation
    let u = random_instance(&mut rng, &t, 2, 0.3);
    let a = util_tree_best_edge_2(&u).unwrap();
    let opt = opt_util_unconstrained(&u).value;
    println!(
        "best tree edge (util)    welfare {} of {}",
        f(&util_welfare(&u, &a)),
        f(&opt)
    );
}
