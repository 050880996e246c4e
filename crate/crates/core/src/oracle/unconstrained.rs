use num_traits::Zero;

use super::{Budget, Optimum, OracleError, Scaled, SearchOptions};
use crate::graph::VertexSet;
use crate::instance::{Allocation, Instance};
use crate::rational::Rational;

/// Utilitarian optimum without connectivity: every vertex goes to an agent
/// valuing it most, the lowest index on ties.
pub fn opt_util_unconstrained(inst: &Instance) -> Optimum {
    let n = inst.agent_count();
    let mut bundles = vec![VertexSet::EMPTY; n];
    let mut value = Rational::zero();
    for v in 0..inst.item_count() {
        let mut best = 0;
        for i in 1..n {
            if inst.utility(i, v) > inst.utility(best, v) {
                best = i;
            }
        }
        bundles[best].insert(v);
        value += inst.utility(best, v);
    }
    Optimum {
        value,
        witness: Allocation::new(bundles),
    }
}

/// Egalitarian optimum over all `n^m` allocations by branch and bound.
///
/// Vertices are assigned in index order. A vertex nobody values goes to
/// agent 0; otherwise only agents valuing it are tried, in index order. A
/// branch is cut once no completion can strictly beat the incumbent.
pub fn opt_egal_unconstrained(
    inst: &Instance,
    opts: SearchOptions,
) -> Result<Optimum, OracleError> {
    let scaled = Scaled::new(inst)?;
    let n = inst.agent_count();
    let m = inst.item_count();
    let mut remaining: Vec<i128> = scaled.weights.iter().map(|row| row.iter().sum()).collect();
    let mut search = Search {
        w: &scaled.weights,
        m,
        acc: vec![0; n],
        owner: vec![0; m],
        best: -1,
        best_owner: vec![0; m],
        budget: Budget::new(opts.budget),
    };
    search.go(0, &mut remaining)?;
    let mut bundles = vec![VertexSet::EMPTY; n];
    for (v, &i) in search.best_owner.iter().enumerate() {
        bundles[i].insert(v);
    }
    Ok(Optimum {
        value: scaled.value(search.best),
        witness: Allocation::new(bundles),
    })
}

struct Search<'a> {
    w: &'a [Vec<i128>],
    m: usize,
    acc: Vec<i128>,
    owner: Vec<usize>,
    best: i128,
    best_owner: Vec<usize>,
    budget: Budget,
}

impl Search<'_> {
    fn go(&mut self, v: usize, remaining: &mut [i128]) -> Result<(), OracleError> {
        self.budget.tick()?;
        let bound = self
            .acc
            .iter()
            .zip(remaining.iter())
            .map(|(a, r)| a + r)
            .min()
            .unwrap();
        if bound <= self.best {
            return Ok(());
        }
        if v == self.m {
            // bound equals the welfare here
            self.best = bound;
            self.best_owner.clone_from(&self.owner);
            return Ok(());
        }
        let n = self.acc.len();
        let mut any = false;
        for i in 0..n {
            let x = self.w[i][v];
            if x > 0 {
                any = true;
                for (j, r) in remaining.iter_mut().enumerate() {
                    *r -= self.w[j][v];
                }
                self.acc[i] += x;
                self.owner[v] = i;
                let res = self.go(v + 1, remaining);
                self.acc[i] -= x;
                for (j, r) in remaining.iter_mut().enumerate() {
                    *r += self.w[j][v];
                }
                res?;
            }
        }
        if !any {
            self.owner[v] = 0;
            self.go(v + 1, remaining)?;
        }
        Ok(())
    }
}
