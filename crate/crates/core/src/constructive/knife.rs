use num_traits::Zero;

use super::{cycle_order, disjoint_opt_egal, ensure, path_order, require_disjoint, ConstructError};
use crate::graph::VertexSet;
use crate::instance::{Allocation, Instance};
use crate::rational::{format_rational, int, Rational};

/// Discrete moving knife along a path. Scanning from the lower-labelled
/// end, the current interval grows until an active agent values it at
/// `target`; she takes it and leaves. The last agent takes what is left.
///
/// A target of 0 hands the whole path to agent 0.
pub fn moving_knife_path(inst: &Instance, target: Rational) -> Result<Allocation, ConstructError> {
    require_disjoint(inst)?;
    let order = path_order(inst.graph()).ok_or(ConstructError::WrongClass("a path"))?;
    let agents: Vec<usize> = (0..inst.agent_count()).collect();
    let alloc = Allocation::new(knife(inst, &order, &agents, target)?);
    let floors = vec![target.max(int(0)); inst.agent_count()];
    ensure(inst, &alloc, &floors, "moving knife")?;
    Ok(alloc)
}

/// The knife over `order` for the listed agents; bundles are indexed by
/// agent of `inst`, agents not listed get nothing.
pub(crate) fn knife(
    inst: &Instance,
    order: &[usize],
    agents: &[usize],
    target: Rational,
) -> Result<Vec<VertexSet>, ConstructError> {
    let mut bundles = vec![VertexSet::EMPTY; inst.agent_count()];
    if agents.is_empty() {
        return Ok(bundles);
    }
    if target <= Rational::zero() {
        bundles[agents[0]] = order.iter().copied().collect();
        return Ok(bundles);
    }
    let mut active = agents.to_vec();
    let mut pos = 0;
    while active.len() > 1 {
        let mut acc = vec![Rational::zero(); active.len()];
        let mut b = VertexSet::EMPTY;
        let winner = loop {
            let Some(&v) = order.get(pos) else {
                return Err(ConstructError::TargetInfeasible(format_rational(&target)));
            };
            pos += 1;
            b.insert(v);
            for (a, &i) in acc.iter_mut().zip(&active) {
                *a += inst.utility(i, v);
            }
            let mut hit = (0..active.len()).filter(|&k| acc[k] >= target);
            if let Some(k) = hit.next() {
                if let Some(k2) = hit.next() {
                    return Err(ConstructError::KnifeTie(active[k], active[k2]));
                }
                break k;
            }
        };
        bundles[active.remove(winner)] = b;
    }
    bundles[active[0]] = order[pos..].iter().copied().collect();
    Ok(bundles)
}

/// Egalitarian allocation on a cycle for any number of agents.
///
/// With `2n − 2 ≤ m < n²` some agent values at most `n − 1` vertices; she
/// takes her best one and the others run the knife on the remaining path
/// with target `OPT/(n − 1)`. With `m ≥ n²` the cycle is cut next to vertex
/// 0 and all agents run the knife with target `OPT/n`. Here `OPT` is the
/// smallest agent total, the egalitarian optimum of a disjoint-valued
/// instance.
pub fn cycle_egal_n(inst: &Instance) -> Result<Allocation, ConstructError> {
    require_disjoint(inst)?;
    let order = cycle_order(inst.graph()).ok_or(ConstructError::WrongClass("a cycle"))?;
    let n = inst.agent_count();
    let m = inst.item_count();
    let opt = disjoint_opt_egal(inst);
    if m >= n * n {
        let target = opt / int(n as i128);
        let agents: Vec<usize> = (0..n).collect();
        let alloc = Allocation::new(knife(inst, &order, &agents, target)?);
        ensure(inst, &alloc, &vec![target; n], "cycle knife")?;
        return Ok(alloc);
    }
    if m + 2 < 2 * n {
        return Err(ConstructError::Precondition(format!(
            "{m} vertices is below 2n − 2 for {n} agents"
        )));
    }
    let few = (0..n)
        .find(|&i| inst.valued_by(i).len() < n)
        .ok_or_else(|| {
            ConstructError::Precondition("every agent values n or more vertices".into())
        })?;
    // best vertex, lowest label on ties
    let best = (0..m)
        .max_by(|&a, &b| {
            inst.utility(few, a)
                .cmp(&inst.utility(few, b))
                .then(b.cmp(&a))
        })
        .expect("cycles have vertices");
    let at = order.iter().position(|&v| v == best).unwrap();
    let rest: Vec<usize> = order[at + 1..]
        .iter()
        .chain(&order[..at])
        .copied()
        .collect();
    let agents: Vec<usize> = (0..n).filter(|&i| i != few).collect();
    let target = opt / int((n - 1) as i128);
    let mut bundles = knife(inst, &rest, &agents, target)?;
    bundles[few] = VertexSet::singleton(best);
    let alloc = Allocation::new(bundles);
    ensure(
        inst,
        &alloc,
        &vec![target; n],
        "cycle with one single-item agent",
    )?;
    Ok(alloc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::instance::egal_welfare;
    use crate::rational::frac;

    #[test]
    fn path_lower_bound_instance() {
        // m = 5, n = 3: agents 0 and 1 on vertices 1 and 3, agent 2 on the
        // odd positions at 1/3 each
        let g = Graph::path(5).unwrap();
        let z = int(0);
        let t = frac(1, 3);
        let inst = Instance::normalized(
            g,
            vec![
                vec![z, int(1), z, z, z],
                vec![z, z, z, int(1), z],
                vec![t, z, t, z, t],
            ],
        )
        .unwrap();
        let a = moving_knife_path(&inst, frac(1, 3)).unwrap();
        assert!(egal_welfare(&inst, &a) >= frac(1, 3));
    }

    #[test]
    fn single_agent_takes_the_path() {
        let g = Graph::path(4).unwrap();
        let inst = Instance::normalized(g, vec![vec![frac(1, 4); 4]]).unwrap();
        let a = moving_knife_path(&inst, int(1)).unwrap();
        assert_eq!(a.bundles[0], VertexSet::full(4));
    }

    #[test]
    fn infeasible_target_is_reported() {
        let g = Graph::path(2).unwrap();
        let z = int(0);
        let inst = Instance::normalized(g, vec![vec![int(1), z], vec![z, int(1)]]).unwrap();
        assert!(moving_knife_path(&inst, int(1)).is_ok());
        let g = Graph::path(2).unwrap();
        let inst = Instance::normalized(g, vec![vec![z, int(1)], vec![int(1), z]]).unwrap();
        assert!(matches!(
            moving_knife_path(&inst, int(2)),
            Err(ConstructError::TargetInfeasible(_))
        ));
    }

    #[test]
    fn cycle_with_few_valued_items() {
        // n = 3, m = 4: agent 0 on two non-adjacent vertices
        let g = Graph::cycle(4).unwrap();
        let z = int(0);
        let h = frac(1, 2);
        let inst = Instance::normalized(
            g,
            vec![
                vec![h, z, h, z],
                vec![z, int(1), z, z],
                vec![z, z, z, int(1)],
            ],
        )
        .unwrap();
        let a = cycle_egal_n(&inst).unwrap();
        assert_eq!(egal_welfare(&inst, &a), frac(1, 2));
    }

    #[test]
    fn large_cycle_cuts_an_edge() {
        let g = Graph::cycle(4).unwrap();
        let z = int(0);
        let h = frac(1, 2);
        let inst = Instance::normalized(g, vec![vec![h, z, h, z], vec![z, h, z, h]]).unwrap();
        let a = cycle_egal_n(&inst).unwrap();
        assert!(egal_welfare(&inst, &a) >= frac(1, 2));
    }
}
