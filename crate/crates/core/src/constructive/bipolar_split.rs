use num_traits::Zero;

use super::{ensure, require_agents, require_disjoint, ConstructError};
use crate::graph::{is_bipolar_ordering, VertexSet};
use crate::instance::{Allocation, Instance};
use crate::rational::{int, Rational};

/// Cuts a bipolar ordering after the shortest prefix that some agent values
/// at half her total or more. That agent takes the prefix and the other
/// agent the suffix; both are connected by the ordering property.
///
/// The empty prefix counts, so an agent with total 0 takes nothing.
pub fn bipolar_split_2(inst: &Instance, ordering: &[usize]) -> Result<Allocation, ConstructError> {
    require_agents(inst, 2)?;
    require_disjoint(inst)?;
    if !is_bipolar_ordering(inst.graph(), ordering) {
        return Err(ConstructError::InvalidOrdering);
    }
    let (bundles, _) = split_along(inst, ordering, [0, 1]);
    let alloc = Allocation::new(bundles.to_vec());
    let half: Vec<Rational> = (0..2).map(|i| inst.total(i) / int(2)).collect();
    ensure(inst, &alloc, &half, "bipolar split")?;
    Ok(alloc)
}

/// The split itself, for agents `pair` of `inst`, over any vertex order.
/// Returns bundles indexed like `pair` and the prefix length.
pub(crate) fn split_along(
    inst: &Instance,
    order: &[usize],
    pair: [usize; 2],
) -> ([VertexSet; 2], usize) {
    let totals = pair.map(|i| inst.total(i));
    let mut acc = [Rational::zero(), Rational::zero()];
    let mut prefix = VertexSet::EMPTY;
    let all: VertexSet = order.iter().copied().collect();
    for k in 0..=order.len() {
        if k > 0 {
            let v = order[k - 1];
            prefix.insert(v);
            for (a, &i) in acc.iter_mut().zip(&pair) {
                *a += inst.utility(i, v);
            }
        }
        for t in 0..2 {
            if acc[t] * int(2) >= totals[t] {
                let mut out = [VertexSet::EMPTY; 2];
                out[t] = prefix;
                out[1 - t] = all.difference(prefix);
                return (out, k);
            }
        }
    }
    unreachable!("the full prefix reaches every agent's half")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bipolar_ordering, Graph};
    use crate::rational::frac;

    #[test]
    fn four_cycle_alternating() {
        let g = Graph::cycle(4).unwrap();
        let h = frac(1, 2);
        let z = int(0);
        let inst =
            Instance::normalized(g.clone(), vec![vec![h, z, h, z], vec![z, h, z, h]]).unwrap();
        let a = bipolar_split_2(&inst, &[0, 1, 2, 3]).unwrap();
        assert_eq!(a.bundles[0], VertexSet::singleton(0));
        assert_eq!(a.bundles[1], VertexSet::from_vertices([1, 2, 3]));
    }

    #[test]
    fn zero_total_agent_gets_nothing() {
        let g = Graph::path(3).unwrap();
        let inst = Instance::unnormalized(g, vec![vec![int(0); 3], vec![int(1); 3]]).unwrap();
        let a = bipolar_split_2(&inst, &[0, 1, 2]).unwrap();
        assert!(a.bundles[0].is_empty());
    }

    #[test]
    fn one_agent_values_everything() {
        let g = Graph::path(4).unwrap();
        let inst = Instance::normalized(g, vec![vec![frac(1, 4); 4], vec![frac(1, 4); 4]]);
        // not disjoint-valued
        assert!(matches!(
            bipolar_split_2(&inst.unwrap(), &[0, 1, 2, 3]),
            Err(ConstructError::NotDisjointValued(0))
        ));
        let g = Graph::path(4).unwrap();
        let inst = Instance::unnormalized(g, vec![vec![frac(1, 4); 4], vec![int(0); 4]]).unwrap();
        let a = bipolar_split_2(&inst, &[0, 1, 2, 3]).unwrap();
        assert_eq!(a.bundles[0], VertexSet::full(4));
    }

    #[test]
    fn rejects_bad_ordering() {
        let g = Graph::path(3).unwrap();
        let inst = Instance::unnormalized(
            g.clone(),
            vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(1)]],
        )
        .unwrap();
        assert_eq!(
            bipolar_split_2(&inst, &[1, 0, 2]),
            Err(ConstructError::InvalidOrdering)
        );
        let o = bipolar_ordering(&g).unwrap();
        assert!(bipolar_split_2(&inst, &o).is_ok());
    }
}
