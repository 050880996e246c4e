//! Seeded random sweeps looking for ratios above the formula table.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::random::{random_class_graph, random_disjoint_normalized, random_instance, seeded};
use crate::adversarial::{formula_for_graph, BoundTag, GraphClass, PocFormula, WelfareKind};
use crate::instance::Instance;
use crate::oracle::{welfare_report, OracleError, SearchOptions};
use crate::rational::{format_rational, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub class: GraphClass,
    pub min_m: usize,
    pub max_m: usize,
    pub agents: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
}

/// A sampled instance together with its ratio and the formula it was
/// checked against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub index: usize,
    pub instance: Instance,
    pub ratio: Rational,
    pub formula: PocFormula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KindOutcome {
    /// Largest ratio seen; the earliest sample wins ties.
    pub worst: Option<Sample>,
    /// Samples above an exact or upper formula value, or above the
    /// generic bound (`m − n + 1` egalitarian, `n` utilitarian).
    pub violations: Vec<Sample>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub samples: usize,
    pub egal: KindOutcome,
    pub util: KindOutcome,
}

/// Bound that holds on every connected graph.
pub fn generic_bound(kind: WelfareKind, m: usize, n: usize) -> Rational {
    match kind {
        WelfareKind::Egal if m >= n => int((m - n + 1) as i128),
        WelfareKind::Egal => int(1),
        WelfareKind::Util => int(n as i128),
    }
}

fn violates(s: &Sample) -> bool {
    let m = s.instance.item_count();
    let n = s.instance.agent_count();
    let capped = matches!(s.formula.tag, BoundTag::Exact | BoundTag::Upper);
    (capped && s.ratio > s.formula.value) || s.ratio > generic_bound(s.formula.kind, m, n)
}

/// Draws `samples` instances, sample `i` from its own ChaCha stream so the
/// result does not depend on thread scheduling.
pub fn search(cfg: &SearchConfig, opts: SearchOptions) -> Result<SearchOutcome, OracleError> {
    assert!(cfg.min_m <= cfg.max_m && !cfg.agents.is_empty());
    let per_sample = |index: usize| -> Result<Option<(Sample, Sample)>, OracleError> {
        let mut rng = seeded(cfg.seed);
        rng.set_stream(index as u64);
        let m = rng.gen_range(cfg.min_m..=cfg.max_m);
        let n = cfg.agents[rng.gen_range(0..cfg.agents.len())];
        let Some(g) = random_class_graph(&mut rng, cfg.class, m) else {
            return Ok(None);
        };
        // half the draws are disjoint-valued, where the worst cases live
        let instance = if rng.gen_bool(0.5) {
            let p = rng.gen_range(0.0..0.5);
            random_disjoint_normalized(&mut rng, &g, n, p)
        } else {
            let p = [0.0, 0.3, 0.6][rng.gen_range(0..3)];
            random_instance(&mut rng, &g, n, p)
        };
        let r = welfare_report(&instance, opts)?;
        let sample = |kind, ratio| Sample {
            index,
            instance: instance.clone(),
            ratio,
            formula: formula_for_graph(kind, &g, n),
        };
        Ok(Some((
            sample(WelfareKind::Egal, r.egal_ratio),
            sample(WelfareKind::Util, r.util_ratio),
        )))
    };
    let results: Vec<_> = (0..cfg.samples)
        .into_par_iter()
        .map(per_sample)
        .collect::<Result<_, _>>()?;
    let mut egal = KindOutcome {
        worst: None,
        violations: Vec::new(),
    };
    let mut util = egal.clone();
    let mut drawn = 0;
    for (e, u) in results.into_iter().flatten() {
        drawn += 1;
        for (out, s) in [(&mut egal, e), (&mut util, u)] {
            if violates(&s) {
                out.violations.push(s.clone());
            }
            if out.worst.as_ref().map_or(true, |w| s.ratio > w.ratio) {
                out.worst = Some(s);
            }
        }
    }
    Ok(SearchOutcome {
        samples: drawn,
        egal,
        util,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleSummary {
    pub index: usize,
    pub m: usize,
    pub n: usize,
    pub ratio: String,
    pub formula: String,
    pub tag: BoundTag,
    pub formula_class: GraphClass,
}

impl Sample {
    pub fn summary(&self) -> SampleSummary {
        SampleSummary {
            index: self.index,
            m: self.instance.item_count(),
            n: self.instance.agent_count(),
            ratio: format_rational(&self.ratio),
            formula: format_rational(&self.formula.value),
            tag: self.formula.tag,
            formula_class: self.formula.class,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(class: GraphClass, m: usize, samples: usize, seed: u64) -> SearchConfig {
        SearchConfig {
            class,
            min_m: m,
            max_m: m,
            agents: vec![2],
            samples,
            seed,
        }
    }

    #[test]
    fn trees_stay_below_max_degree() {
        let out = search(&cfg(GraphClass::Tree, 6, 150, 5), SearchOptions::default()).unwrap();
        assert!(out.egal.violations.is_empty());
        let w = out.egal.worst.unwrap();
        assert!(w.ratio <= int(w.instance.graph().max_degree() as i128));
    }

    #[test]
    fn deterministic() {
        let a = search(&cfg(GraphClass::Star, 6, 40, 9), SearchOptions::default()).unwrap();
        let b = search(&cfg(GraphClass::Star, 6, 40, 9), SearchOptions::default()).unwrap();
        assert_eq!(a, b);
        assert!(a.egal.worst.unwrap().ratio <= int(5));
    }
}
