mod common;

use common::strategies::instance;
use poc_core::graph::VertexSet;
use poc_core::instance::{egal_welfare, reduce_to_disjoint, Allocation};
use poc_core::oracle::{enumerate_connected_allocations, opt_egal_unconstrained, SearchOptions};
use proptest::prelude::*;

/// Allocation giving vertex `v` to agent `owner[v] % n`.
fn allocation(n: usize, owner: &[usize]) -> Allocation {
    let mut b = vec![VertexSet::EMPTY; n];
    for (v, &o) in owner.iter().enumerate() {
        b[o % n].insert(v);
    }
    Allocation::new(b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reduction_is_disjoint_valued(
        (inst, owner) in instance(1, 8, 4).prop_flat_map(|i| {
            let m = i.item_count();
            (Just(i), proptest::collection::vec(any::<usize>(), m))
        })
    ) {
        let base = allocation(inst.agent_count(), &owner);
        let r = reduce_to_disjoint(&inst, &base).unwrap();
        prop_assert!(r.is_disjoint_valued());
        prop_assert!(!r.is_normalized());
        for v in 0..inst.item_count() {
            let positive = (0..inst.agent_count()).filter(|&i| r.utility(i, v) > 0.into()).count();
            prop_assert!(positive <= 1);
        }
    }

    #[test]
    fn reduced_welfare_carries_over(inst in instance(1, 6, 3)) {
        // base: an egalitarian optimum, as in the reduction argument
        let base = opt_egal_unconstrained(&inst, SearchOptions::default()).unwrap().witness;
        let r = reduce_to_disjoint(&inst, &base).unwrap();
        for a in enumerate_connected_allocations(inst.graph(), inst.agent_count(), SearchOptions::default()).unwrap() {
            prop_assert!(egal_welfare(&inst, &a) >= egal_welfare(&r, &a));
        }
    }
}

#[test]
fn reduction_rejects_a_partial_base() {
    let inst =
        poc_core::harness::parse_instance(include_str!("../examples/data/pendant_triangle.json"))
            .unwrap();
    let partial = Allocation::new(vec![VertexSet::singleton(0), VertexSet::EMPTY]);
    assert!(reduce_to_disjoint(&inst, &partial).is_err());
}
