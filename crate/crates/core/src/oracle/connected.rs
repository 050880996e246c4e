//! Search over connected allocations.
//!
//! Agents choose bundles in index order. Each non-final agent takes either
//! the empty bundle or a connected subset of the still-unassigned vertices;
//! the final agent takes whatever is left, provided it is connected.
//! Connected subsets with smallest vertex `s` are produced by a binary
//! include/exclude recursion on the least frontier vertex, so every subset
//! appears exactly once.

use rayon::prelude::*;

use super::{Budget, Optimum, OracleError, Scaled, SearchOptions};
use crate::graph::{Graph, VertexSet};
use crate::instance::{Allocation, Instance};

trait Visitor {
    /// Whether some completion of the partial state could matter. Agent
    /// `k` currently holds `current`; `open` may still join it; `rest` is
    /// everything not yet given to agents `0..=k`.
    fn promising(
        &self,
        k: usize,
        fixed: &[VertexSet],
        current: VertexSet,
        open: VertexSet,
        rest: VertexSet,
    ) -> bool;

    fn leaf(&mut self, bundles: &[VertexSet]);
}

struct Engine<'a, V> {
    g: &'a Graph,
    n: usize,
    bundles: Vec<VertexSet>,
    visitor: V,
    budget: &'a Budget,
}

impl<V: Visitor> Engine<'_, V> {
    fn assign(&mut self, k: usize, remaining: VertexSet) -> Result<(), OracleError> {
        self.budget.tick()?;
        if k + 1 == self.n {
            if self.g.is_connected_subset(remaining)
                && self.visitor.promising(
                    k,
                    &self.bundles[..k],
                    remaining,
                    VertexSet::EMPTY,
                    VertexSet::EMPTY,
                )
            {
                self.bundles[k] = remaining;
                self.visitor.leaf(&self.bundles);
            }
            return Ok(());
        }
        self.choose(k, remaining, VertexSet::EMPTY)?;
        for s in remaining {
            let above = remaining.above(s);
            let ext = self.g.neighbors(s).intersection(above);
            self.grow(
                k,
                remaining,
                above,
                VertexSet::singleton(s),
                ext,
                VertexSet::EMPTY,
            )?;
        }
        Ok(())
    }

    /// Agent `k` takes `bundle` and the next agent continues.
    fn choose(
        &mut self,
        k: usize,
        remaining: VertexSet,
        bundle: VertexSet,
    ) -> Result<(), OracleError> {
        let rest = remaining.difference(bundle);
        if !self
            .visitor
            .promising(k, &self.bundles[..k], bundle, VertexSet::EMPTY, rest)
        {
            return Ok(());
        }
        self.bundles[k] = bundle;
        self.assign(k + 1, rest)
    }

    fn grow(
        &mut self,
        k: usize,
        remaining: VertexSet,
        above: VertexSet,
        s: VertexSet,
        ext: VertexSet,
        excluded: VertexSet,
    ) -> Result<(), OracleError> {
        self.budget.tick()?;
        let Some(v) = ext.first() else {
            return self.choose(k, remaining, s);
        };
        let open = above.difference(s).difference(excluded);
        if !self
            .visitor
            .promising(k, &self.bundles[..k], s, open, remaining.difference(s))
        {
            return Ok(());
        }
        let with = s.with(v);
        let ext_in = ext
            .union(self.g.neighbors(v).intersection(above))
            .difference(with)
            .difference(excluded);
        self.grow(k, remaining, above, with, ext_in, excluded)?;
        self.grow(k, remaining, above, s, ext.without(v), excluded.with(v))
    }
}

/// Runs the search, optionally splitting over agent 0's choices. Branch
/// results are folded in enumeration order so the outcome never depends on
/// scheduling.
fn run<V, F>(g: &Graph, n: usize, opts: SearchOptions, make: F) -> Result<Vec<V>, OracleError>
where
    V: Visitor + Send,
    F: Fn() -> V + Sync,
{
    let budget = Budget::new(opts.budget);
    let all = g.vertices();
    if !opts.parallel || n < 2 {
        let mut e = Engine {
            g,
            n,
            bundles: vec![VertexSet::EMPTY; n],
            visitor: make(),
            budget: &budget,
        };
        e.assign(0, all)?;
        return Ok(vec![e.visitor]);
    }
    // First level: every bundle agent 0 could take, in search order.
    let mut firsts = Vec::new();
    collect_connected_subsets(g, all, &mut firsts);
    firsts
        .par_iter()
        .map(|&b| {
            let mut e = Engine {
                g,
                n,
                bundles: vec![VertexSet::EMPTY; n],
                visitor: make(),
                budget: &budget,
            };
            e.choose(0, all, b)?;
            Ok(e.visitor)
        })
        .collect()
}

/// The empty set followed by every connected subset of `within`, in the
/// order the search visits them.
fn collect_connected_subsets(g: &Graph, within: VertexSet, out: &mut Vec<VertexSet>) {
    fn grow(
        g: &Graph,
        above: VertexSet,
        s: VertexSet,
        ext: VertexSet,
        ex: VertexSet,
        out: &mut Vec<VertexSet>,
    ) {
        let Some(v) = ext.first() else {
            out.push(s);
            return;
        };
        let with = s.with(v);
        let ext_in = ext
            .union(g.neighbors(v).intersection(above))
            .difference(with)
            .difference(ex);
        grow(g, above, with, ext_in, ex, out);
        grow(g, above, s, ext.without(v), ex.with(v), out);
    }
    out.push(VertexSet::EMPTY);
    for s in within {
        let above = within.above(s);
        grow(
            g,
            above,
            VertexSet::singleton(s),
            g.neighbors(s).intersection(above),
            VertexSet::EMPTY,
            out,
        );
    }
}

struct Collect(Vec<Allocation>);

impl Visitor for Collect {
    fn promising(
        &self,
        _: usize,
        _: &[VertexSet],
        _: VertexSet,
        _: VertexSet,
        _: VertexSet,
    ) -> bool {
        true
    }
    fn leaf(&mut self, bundles: &[VertexSet]) {
        self.0.push(Allocation::new(bundles.to_vec()));
    }
}

/// Every connected allocation of the graph's vertices to `n` agents, each
/// exactly once, in a fixed order.
pub fn enumerate_connected_allocations(
    g: &Graph,
    n: usize,
    opts: SearchOptions,
) -> Result<Vec<Allocation>, OracleError> {
    let parts = run(g, n, opts, || Collect(Vec::new()))?;
    Ok(parts.into_iter().flat_map(|c| c.0).collect())
}

struct Callback<F>(F);

impl<F: FnMut(&[VertexSet])> Visitor for Callback<F> {
    fn promising(
        &self,
        _: usize,
        _: &[VertexSet],
        _: VertexSet,
        _: VertexSet,
        _: VertexSet,
    ) -> bool {
        true
    }
    fn leaf(&mut self, bundles: &[VertexSet]) {
        (self.0)(bundles)
    }
}

/// Streams connected allocations to `f` in enumeration order, returning how
/// many were produced.
pub fn for_each_connected_allocation(
    g: &Graph,
    n: usize,
    budget: u64,
    mut f: impl FnMut(&[VertexSet]),
) -> Result<u64, OracleError> {
    let mut count = 0u64;
    let b = Budget::new(budget);
    let mut e = Engine {
        g,
        n,
        bundles: vec![VertexSet::EMPTY; n],
        visitor: Callback(|bundles: &[VertexSet]| {
            count += 1;
            f(bundles)
        }),
        budget: &b,
    };
    e.assign(0, g.vertices())?;
    drop(e);
    Ok(count)
}

/// Number of connected allocations to `n` agents.
pub fn count_connected_allocations(g: &Graph, n: usize, budget: u64) -> Result<u64, OracleError> {
    for_each_connected_allocation(g, n, budget, |_| {})
}

struct Egal<'a> {
    w: &'a Scaled,
    best: i128,
    witness: Option<Vec<VertexSet>>,
}

impl Visitor for Egal<'_> {
    fn promising(
        &self,
        k: usize,
        fixed: &[VertexSet],
        current: VertexSet,
        open: VertexSet,
        rest: VertexSet,
    ) -> bool {
        let mut bound = self.w.sum(k, current.union(open));
        for (i, &b) in fixed.iter().enumerate() {
            bound = bound.min(self.w.sum(i, b));
        }
        for j in k + 1..self.w.weights.len() {
            bound = bound.min(self.w.sum(j, rest));
        }
        bound > self.best
    }

    fn leaf(&mut self, bundles: &[VertexSet]) {
        let value = bundles
            .iter()
            .enumerate()
            .map(|(i, &b)| self.w.sum(i, b))
            .min()
            .unwrap();
        if value > self.best {
            self.best = value;
            self.witness = Some(bundles.to_vec());
        }
    }
}

struct Util<'a> {
    w: &'a Scaled,
    /// `tail_max[k][v]`: the largest weight any agent `>= k` has for `v`.
    tail_max: Vec<Vec<i128>>,
    best: i128,
    witness: Option<Vec<VertexSet>>,
}

impl Visitor for Util<'_> {
    fn promising(
        &self,
        k: usize,
        fixed: &[VertexSet],
        current: VertexSet,
        _open: VertexSet,
        rest: VertexSet,
    ) -> bool {
        let mut bound = self.w.sum(k, current);
        for (i, &b) in fixed.iter().enumerate() {
            bound += self.w.sum(i, b);
        }
        bound += rest.iter().map(|v| self.tail_max[k][v]).sum::<i128>();
        bound > self.best
    }

    fn leaf(&mut self, bundles: &[VertexSet]) {
        let value: i128 = bundles
            .iter()
            .enumerate()
            .map(|(i, &b)| self.w.sum(i, b))
            .sum();
        if value > self.best {
            self.best = value;
            self.witness = Some(bundles.to_vec());
        }
    }
}

fn fold_best(parts: Vec<(i128, Option<Vec<VertexSet>>)>, w: &Scaled) -> Optimum {
    // Strictly larger wins, so ties keep the earliest branch.
    let mut best = (-1i128, None);
    for (value, witness) in parts {
        if witness.is_some() && value > best.0 {
            best = (value, witness);
        }
    }
    let bundles = best
        .1
        .expect("giving everything to the last agent is always connected");
    Optimum {
        value: w.value(best.0),
        witness: Allocation::new(bundles),
    }
}

/// Largest egalitarian welfare over connected allocations. The witness is
/// the first optimal allocation in enumeration order.
pub fn best_connected_egal(inst: &Instance, opts: SearchOptions) -> Result<Optimum, OracleError> {
    let w = Scaled::new(inst)?;
    let parts = run(inst.graph(), inst.agent_count(), opts, || Egal {
        w: &w,
        best: -1,
        witness: None,
    })?;
    Ok(fold_best(
        parts.into_iter().map(|e| (e.best, e.witness)).collect(),
        &w,
    ))
}

/// Largest utilitarian welfare over connected allocations. The witness is
/// the first optimal allocation in enumeration order.
pub fn best_connected_util(inst: &Instance, opts: SearchOptions) -> Result<Optimum, OracleError> {
    let w = Scaled::new(inst)?;
    let n = inst.agent_count();
    let m = inst.item_count();
    let mut tail_max = vec![vec![0i128; m]; n + 1];
    for k in (0..n).rev() {
        for v in 0..m {
            tail_max[k][v] = tail_max[k + 1][v].max(w.weights[k][v]);
        }
    }
    let parts = run(inst.graph(), n, opts, || Util {
        w: &w,
        tail_max: tail_max.clone(),
        best: -1,
        witness: None,
    })?;
    Ok(fold_best(
        parts.into_iter().map(|u| (u.best, u.witness)).collect(),
        &w,
    ))
}
