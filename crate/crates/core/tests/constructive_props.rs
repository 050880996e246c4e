mod common;

use common::strategies::{connected_graph, disjoint_on, instance_on, tree};
use poc_core::adversarial::{formula_for_graph, BoundTag, WelfareKind};
use poc_core::constructive::{
    alg1_connectivity1_2, best_item_seeds, bipolar_split_2, complete_bipartite_egal_2,
    complete_minus_matching_2, cycle_egal_n, matching_guarantee, moving_knife_path,
    tree_3_allocation, tree_3_cut, util_cycle_best_arc_2, util_tree_best_edge_2,
};
use poc_core::graph::{bipolar_ordering, vertex_connectivity, Graph};
use poc_core::harness::{constructive_egal, exact_catalogue, Limits};
use poc_core::instance::{bundle_utility, egal_welfare, util_welfare, Allocation, Instance};
use poc_core::oracle::{best_connected_util, opt_egal_unconstrained, SearchOptions};
use poc_core::rational::{int, Rational};
use proptest::prelude::*;

fn positive(inst: &Instance) -> bool {
    (0..inst.agent_count()).all(|i| inst.total(i) > int(0))
}

/// Connected, and agent `i` gets at least `fraction[i]` of her total.
fn meets(inst: &Instance, a: &Allocation, fraction: &[Rational]) -> bool {
    common::is_connected_allocation(inst, a)
        && (0..inst.agent_count())
            .all(|i| bundle_utility(inst, i, a.bundles[i]) >= fraction[i] * inst.total(i))
}

fn gamma(g: &Graph) -> Rational {
    let adj = common::adjacency(g);
    let d = (0..g.vertex_count())
        .map(|v| common::components_without(&adj, &[v]))
        .max()
        .unwrap();
    Rational::new(1, d.max(3) as i128)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn algorithm_1_on_trees(inst in tree(2, 10).prop_flat_map(|t| disjoint_on(t, 2))) {
        let a = alg1_connectivity1_2(&inst).unwrap();
        let f = gamma(inst.graph());
        prop_assert!(meets(&inst, &a, &[f, f]));
    }

    #[test]
    fn algorithm_1_on_cut_vertex_graphs(inst in connected_graph(3, 10, 0.25).prop_flat_map(|g| disjoint_on(g, 2))) {
        if vertex_connectivity(inst.graph()) != 1 {
            return Ok(());
        }
        let a = alg1_connectivity1_2(&inst).unwrap();
        let f = gamma(inst.graph());
        prop_assert!(meets(&inst, &a, &[f, f]));
    }

    #[test]
    fn three_agents_on_trees(inst in tree(5, 10).prop_flat_map(|t| disjoint_on(t, 3))) {
        if !positive(&inst) {
            return Ok(());
        }
        let delta = common::brute_two_removal(inst.graph());
        let f = Rational::new(1, delta as i128);
        let a = tree_3_allocation(&inst).unwrap();
        prop_assert!(meets(&inst, &a, &[f, f, f]));

        let cut = tree_3_cut(&inst).unwrap();
        let g = inst.graph();
        prop_assert!(g.is_connected_subset(cut.subtree));
        prop_assert!(g.is_connected_subset(g.vertices().difference(cut.subtree)));
        prop_assert!(bundle_utility(&inst, cut.agent, cut.subtree) * int(delta as i128) >= inst.total(cut.agent));
        for j in (0..3).filter(|&j| j != cut.agent) {
            prop_assert!(bundle_utility(&inst, j, cut.subtree) <= cut.others_bound * inst.total(j));
        }
    }

    #[test]
    fn knife_reaches_the_target(inst in (1usize..=10, 2usize..=4).prop_flat_map(|(m, n)| disjoint_on(Graph::path(m).unwrap(), n))) {
        let n = inst.agent_count();
        let target = (0..n).map(|i| inst.total(i)).min().unwrap() / int(n as i128);
        let a = moving_knife_path(&inst, target).unwrap();
        prop_assert!(common::is_connected_allocation(&inst, &a));
        for i in 0..n {
            prop_assert!(bundle_utility(&inst, i, a.bundles[i]) >= target);
        }
    }

    #[test]
    fn knife_on_cycles(inst in (3usize..=10, 2usize..=4).prop_flat_map(|(m, n)| disjoint_on(Graph::cycle(m).unwrap(), n))) {
        let (m, n) = (inst.item_count(), inst.agent_count());
        if m + 2 < 2 * n {
            prop_assert!(cycle_egal_n(&inst).is_err());
            return Ok(());
        }
        let opt = (0..n).map(|i| inst.total(i)).min().unwrap();
        let f = if m >= n * n { n } else { n - 1 };
        let a = cycle_egal_n(&inst).unwrap();
        prop_assert!(common::is_connected_allocation(&inst, &a));
        prop_assert!(egal_welfare(&inst, &a) * int(f as i128) >= opt);
    }

    #[test]
    fn bipolar_split_halves(inst in connected_graph(2, 9, 0.45).prop_flat_map(|g| disjoint_on(g, 2))) {
        let Some(ord) = bipolar_ordering(inst.graph()) else { return Ok(()) };
        let a = bipolar_split_2(&inst, &ord).unwrap();
        let h = Rational::new(1, 2);
        prop_assert!(meets(&inst, &a, &[h, h]));
    }

    #[test]
    fn matching_removed(inst in (3usize..=9).prop_flat_map(|m| (Just(m), 1..=m / 2))
        .prop_flat_map(|(m, k)| disjoint_on(Graph::complete_minus_matching(m, k).unwrap(), 2)))
    {
        let m = inst.item_count();
        let pairs = (0..m).filter(|&v| inst.graph().degree(v) == m - 2).count() / 2;
        let f = matching_guarantee(m, pairs);
        let a = complete_minus_matching_2(&inst).unwrap();
        prop_assert!(meets(&inst, &a, &[f, f]));
    }

    #[test]
    fn bipartite(inst in (2usize..=5, 2usize..=5).prop_flat_map(|(x, y)| disjoint_on(Graph::complete_bipartite(x, y).unwrap(), 2))) {
        let g = inst.graph();
        let x = (0..g.vertex_count()).map(|v| g.degree(v)).min().unwrap() as i128;
        let f = Rational::new(x - 1, x);
        let a = complete_bipartite_egal_2(&inst).unwrap();
        prop_assert!(meets(&inst, &a, &[f, f]));
    }

    #[test]
    fn seeds_keep_the_best_item(inst in (connected_graph(1, 9, 0.3), 1usize..=4).prop_flat_map(|(g, n)| disjoint_on(g, n))) {
        let a = best_item_seeds(&inst).unwrap();
        prop_assert!(common::is_connected_allocation(&inst, &a));
        for i in 0..inst.agent_count() {
            let best = (0..inst.item_count()).map(|v| inst.utility(i, v)).max().unwrap();
            prop_assert!(bundle_utility(&inst, i, a.bundles[i]) >= best);
        }
    }

    #[test]
    fn util_scans_are_exhaustive(
        (inst, on_tree) in prop_oneof![
            tree(2, 10).prop_flat_map(|t| instance_on(t, 2)).prop_map(|i| (i, true)),
            (3usize..=10).prop_flat_map(|m| instance_on(Graph::cycle(m).unwrap(), 2)).prop_map(|i| (i, false)),
        ]
    ) {
        let a = if on_tree { util_tree_best_edge_2(&inst) } else { util_cycle_best_arc_2(&inst) }.unwrap();
        prop_assert!(common::is_connected_allocation(&inst, &a));
        let best = best_connected_util(&inst, SearchOptions::default()).unwrap().value;
        prop_assert_eq!(util_welfare(&inst, &a), best);
    }

    #[test]
    fn reduction_pipeline_meets_the_table(inst in (connected_graph(2, 7, 0.3), 2usize..=3).prop_flat_map(|(g, n)| instance_on(g, n))) {
        let c = constructive_egal(&inst, SearchOptions::default()).unwrap();
        prop_assert!(common::is_connected_allocation(&inst, &c.allocation));
        prop_assert!(c.within_factor());
        let f = formula_for_graph(WelfareKind::Egal, inst.graph(), inst.agent_count());
        if f.tag != BoundTag::Lower {
            prop_assert!(c.welfare * f.value >= c.opt_egal);
        }
    }
}

#[test]
fn pipeline_on_the_catalogue() {
    for case in exact_catalogue(Limits::new(8, 3), 6) {
        let gen = case.generate().unwrap();
        if gen.expected.kind != WelfareKind::Egal {
            continue;
        }
        let c = constructive_egal(&gen.instance, SearchOptions::default()).unwrap();
        let opt = opt_egal_unconstrained(&gen.instance, SearchOptions::default())
            .unwrap()
            .value;
        assert_eq!(c.opt_egal, opt);
        assert!(
            c.welfare * gen.expected.value >= opt,
            "{} {case}: {}",
            case.name(),
            c.algorithm
        );
    }
}
