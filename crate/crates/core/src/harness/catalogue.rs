//! Named generator cases and the verify pipeline.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::graph_spec::GraphSpec;
use crate::adversarial::{self as adv, GenError, Generated, MatchingVariant, WelfareKind};
use crate::graph::enumerate::{connected_graphs, trees};
use crate::graph::{bipolar_ordering, vertex_connectivity};
use crate::instance::Instance;
use crate::oracle::{
    best_connected_egal, best_connected_util, opt_egal_unconstrained, opt_util_unconstrained,
    OracleError, SearchOptions,
};
use crate::rational::{format_rational, welfare_ratio, Rational};

/// Generator names, in catalogue order.
pub const GENERATORS: &[&str] = &[
    "egal-cmm",
    "egal-bipartite",
    "egal-2linked",
    "egal-conn1",
    "egal-tree3",
    "egal-star",
    "egal-path",
    "egal-cycle",
    "util-cmm",
    "util-bipartite",
    "util-tree",
    "util-cycle-2",
    "util-star-n",
    "util-path-n",
    "util-cycle-n",
    "util-path-m3",
];

/// One generator call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Case {
    EgalCmm {
        m: usize,
        k: usize,
    },
    EgalBipartite {
        x: usize,
        y: usize,
    },
    /// Unlinked pairs default to the first ones found.
    Egal2Linked {
        graph: GraphSpec,
        pairs: Option<[usize; 4]>,
    },
    EgalConn1 {
        graph: GraphSpec,
    },
    EgalTree3 {
        graph: GraphSpec,
    },
    EgalStar {
        m: usize,
        n: usize,
    },
    EgalPath {
        m: usize,
        n: usize,
    },
    EgalCycle {
        m: usize,
        n: usize,
    },
    UtilCmm {
        m: usize,
        k: usize,
    },
    UtilBipartite {
        x: usize,
        y: usize,
    },
    UtilTree {
        graph: GraphSpec,
    },
    UtilCycle2 {
        m: usize,
    },
    UtilStarN {
        n: usize,
        c: usize,
        d: usize,
    },
    UtilPathN {
        n: usize,
        c: usize,
        d: usize,
    },
    UtilCycleN {
        n: usize,
        c: usize,
        d: usize,
    },
    UtilPathM3 {
        n: usize,
    },
}

impl Case {
    pub fn name(&self) -> &'static str {
        match self {
            Case::EgalCmm { .. } => "egal-cmm",
            Case::EgalBipartite { .. } => "egal-bipartite",
            Case::Egal2Linked { .. } => "egal-2linked",
            Case::EgalConn1 { .. } => "egal-conn1",
            Case::EgalTree3 { .. } => "egal-tree3",
            Case::EgalStar { .. } => "egal-star",
            Case::EgalPath { .. } => "egal-path",
            Case::EgalCycle { .. } => "egal-cycle",
            Case::UtilCmm { .. } => "util-cmm",
            Case::UtilBipartite { .. } => "util-bipartite",
            Case::UtilTree { .. } => "util-tree",
            Case::UtilCycle2 { .. } => "util-cycle-2",
            Case::UtilStarN { .. } => "util-star-n",
            Case::UtilPathN { .. } => "util-path-n",
            Case::UtilCycleN { .. } => "util-cycle-n",
            Case::UtilPathM3 { .. } => "util-path-m3",
        }
    }

    pub fn kind(&self) -> WelfareKind {
        if self.name().starts_with("egal") {
            WelfareKind::Egal
        } else {
            WelfareKind::Util
        }
    }

    pub fn generate(&self) -> Result<Generated, GenError> {
        match self {
            &Case::EgalCmm { m, k } => {
                adv::gen_egal_complete_minus_matching(m, k, MatchingVariant::for_graph(m, k))
            }
            &Case::EgalBipartite { x, y } => adv::gen_egal_complete_bipartite(x, y),
            Case::Egal2Linked { graph, pairs } => {
                let g = graph.build()?;
                let pairs = match pairs {
                    Some(p) => *p,
                    None => adv::unlinked_pairs(&g)
                        .ok_or_else(|| GenError::OutOfRange(format!("{graph} is 2-linked")))?,
                };
                adv::gen_egal_2linked_violation(&g, pairs)
            }
            Case::EgalConn1 { graph } => adv::gen_egal_connectivity1(&graph.build()?),
            Case::EgalTree3 { graph } => adv::gen_egal_tree_3(&graph.build()?),
            &Case::EgalStar { m, n } => adv::gen_egal_star(m, n),
            &Case::EgalPath { m, n } => adv::gen_egal_path(m, n),
            &Case::EgalCycle { m, n } => adv::gen_egal_cycle(m, n),
            &Case::UtilCmm { m, k } => {
                adv::gen_util_complete_minus_matching(m, k, MatchingVariant::for_graph(m, k))
            }
            &Case::UtilBipartite { x, y } => adv::gen_util_complete_bipartite(x, y),
            Case::UtilTree { graph } => adv::gen_util_tree(&graph.build()?),
            &Case::UtilCycle2 { m } => adv::gen_util_cycle_2(m),
            &Case::UtilStarN { n, c, d } => adv::gen_util_star_n(n, c, d),
            &Case::UtilPathN { n, c, d } => adv::gen_util_path_n(n, c, d),
            &Case::UtilCycleN { n, c, d } => adv::gen_util_cycle_n(n, c, d),
            &Case::UtilPathM3 { n } => adv::gen_util_path_m3(n),
        }
    }
}

impl fmt::Display for Case {
    /// The parameter part, e.g. `m=5 n=2` or `graph=path:4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::EgalCmm { m, k } | Case::UtilCmm { m, k } => write!(f, "m={m} k={k}"),
            Case::EgalBipartite { x, y } | Case::UtilBipartite { x, y } => write!(f, "x={x} y={y}"),
            Case::Egal2Linked { graph, pairs: None } => write!(f, "graph={graph}"),
            Case::Egal2Linked {
                graph,
                pairs: Some([a, b, c, d]),
            } => {
                write!(f, "graph={graph} pairs={a},{b},{c},{d}")
            }
            Case::EgalConn1 { graph } | Case::EgalTree3 { graph } | Case::UtilTree { graph } => {
                write!(f, "graph={graph}")
            }
            Case::EgalStar { m, n } | Case::EgalPath { m, n } | Case::EgalCycle { m, n } => {
                write!(f, "m={m} n={n}")
            }
            Case::UtilCycle2 { m } => write!(f, "m={m}"),
            Case::UtilStarN { n, c, d }
            | Case::UtilPathN { n, c, d }
            | Case::UtilCycleN { n, c, d } => {
                write!(f, "n={n} c={c} d={d}")
            }
            Case::UtilPathM3 { n } => write!(f, "n={n}"),
        }
    }
}

/// Bounds on the catalogue: item and agent counts, inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub min_m: usize,
    pub max_m: usize,
    pub min_n: usize,
    pub max_n: usize,
}

impl Limits {
    pub fn new(max_m: usize, max_n: usize) -> Self {
        Limits {
            min_m: 1,
            max_m,
            min_n: 1,
            max_n,
        }
    }

    fn fits(&self, m: usize, n: usize) -> bool {
        (self.min_m..=self.max_m).contains(&m) && (self.min_n..=self.max_n).contains(&n)
    }
}

/// Every exact-tagged construction within `limits`, in canonical order:
/// generator order, then parameters ascending. Graph-parametrized
/// generators run over all trees up to `max_m` vertices and all connected
/// graphs of the right kind up to `min(max_m, graph_cap)` vertices.
pub fn exact_catalogue(limits: Limits, graph_cap: usize) -> Vec<Case> {
    let mut out = Vec::new();
    let ms = 1..=limits.max_m;
    let two = (limits.min_n..=limits.max_n).contains(&2);
    let cap = limits.max_m.min(graph_cap);
    let sized = |g: &crate::graph::Graph, n: usize| limits.fits(g.vertex_count(), n);
    let all_graphs = connected_graphs(cap);
    let all_trees = trees(limits.max_m);

    if two {
        for m in ms.clone().filter(|&m| m >= 3 && limits.fits(m, 2)) {
            for k in 1..=m / 2 {
                out.push(Case::EgalCmm { m, k });
            }
        }
        for m in ms.clone().filter(|&m| m >= 2 && limits.fits(m, 2)) {
            for x in 1..=m / 2 {
                out.push(Case::EgalBipartite { x, y: m - x });
            }
        }
        for g in all_graphs.iter().filter(|g| sized(g, 2)) {
            if g.vertex_count() >= 4 && vertex_connectivity(g) == 2 && bipolar_ordering(g).is_some()
            {
                out.push(Case::Egal2Linked {
                    graph: GraphSpec::from_graph(g),
                    pairs: None,
                });
            }
        }
        for g in all_graphs.iter().filter(|g| sized(g, 2)) {
            if g.vertex_count() >= 3 && vertex_connectivity(g) == 1 {
                out.push(Case::EgalConn1 {
                    graph: GraphSpec::from_graph(g),
                });
            }
        }
    }
    for t in all_trees
        .iter()
        .filter(|t| t.vertex_count() >= 3 && sized(t, 3))
    {
        out.push(Case::EgalTree3 {
            graph: GraphSpec::from_graph(t),
        });
    }
    for m in ms.clone() {
        for n in 2..=m.min(limits.max_n) {
            if m >= 3 && limits.fits(m, n) {
                out.push(Case::EgalStar { m, n });
            }
        }
    }
    for m in ms.clone() {
        for n in 2..=m.min(limits.max_n) {
            if limits.fits(m, n) {
                out.push(Case::EgalPath { m, n });
            }
        }
    }
    for m in ms.clone() {
        for n in 2..=m.min(limits.max_n) {
            if m >= 3 && limits.fits(m, n) {
                out.push(Case::EgalCycle { m, n });
            }
        }
    }
    if two {
        for m in ms.clone().filter(|&m| m >= 3 && limits.fits(m, 2)) {
            for k in 1..=m / 2 {
                out.push(Case::UtilCmm { m, k });
            }
        }
        for m in ms.clone().filter(|&m| m >= 4 && limits.fits(m, 2)) {
            for x in 2..=m / 2 {
                out.push(Case::UtilBipartite { x, y: m - x });
            }
        }
        for t in all_trees
            .iter()
            .filter(|t| t.vertex_count() >= 2 && sized(t, 2))
        {
            out.push(Case::UtilTree {
                graph: GraphSpec::from_graph(t),
            });
        }
        for m in ms.clone().filter(|&m| m >= 3 && limits.fits(m, 2)) {
            out.push(Case::UtilCycle2 { m });
        }
    }
    for n in 2..=limits.max_n {
        if limits.fits(3, n) {
            out.push(Case::UtilPathM3 { n });
        }
    }
    out
}

/// The finite lower-bound witnesses for `(n, c, d)` in the given ranges;
/// tuples outside a construction's hypotheses are skipped.
pub fn lower_catalogue(ns: &[usize], cs: &[usize], ds: &[usize]) -> Vec<Case> {
    let mut out = Vec::new();
    for &n in ns {
        for &c in cs {
            for &d in ds {
                if adv::util_star_lower(n, c, d).is_ok() {
                    out.push(Case::UtilStarN { n, c, d });
                }
                if adv::util_path_lower(n, c, d).is_ok() {
                    out.push(Case::UtilPathN { n, c, d });
                }
                if adv::util_cycle_lower(n, c, d).is_ok() {
                    out.push(Case::UtilCycleN { n, c, d });
                }
            }
        }
    }
    out
}

/// The welfare ratio of one kind, computing only the optima it needs.
pub fn measured_ratio(
    inst: &Instance,
    kind: WelfareKind,
    opts: SearchOptions,
) -> Result<Rational, OracleError> {
    let (opt, conn) = match kind {
        WelfareKind::Egal => (
            opt_egal_unconstrained(inst, opts)?.value,
            best_connected_egal(inst, opts)?.value,
        ),
        WelfareKind::Util => (
            opt_util_unconstrained(inst).value,
            best_connected_util(inst, opts)?.value,
        ),
    };
    Ok(welfare_ratio(opt, conn)
        .expect("connected optimum is zero only when the unconstrained one is"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Error => "error",
        })
    }
}

/// One line of a verify report. Column order matches the CSV header.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyRow {
    pub class: String,
    pub params: String,
    pub expected: String,
    pub tag: String,
    pub measured: String,
    pub verdict: Verdict,
    #[serde(skip)]
    pub budget_exceeded: bool,
}

pub fn verify_case(case: &Case, opts: SearchOptions) -> VerifyRow {
    let row = |expected: String, tag: String, measured: String, verdict| VerifyRow {
        class: case.name().to_string(),
        params: case.to_string(),
        expected,
        tag,
        measured,
        verdict,
        budget_exceeded: false,
    };
    let gen = match case.generate() {
        Ok(g) => g,
        Err(e) => return row(String::new(), String::new(), e.to_string(), Verdict::Error),
    };
    let expected = format_rational(&gen.expected.value);
    let tag = gen.expected.tag.to_string();
    match measured_ratio(&gen.instance, gen.expected.kind, opts) {
        Ok(r) => {
            let verdict = if gen.expected.accepts(r) {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            row(expected, tag, format_rational(&r), verdict)
        }
        Err(e) => VerifyRow {
            budget_exceeded: matches!(e, OracleError::BudgetExceeded(_)),
            ..row(expected, tag, e.to_string(), Verdict::Error)
        },
    }
}

/// Verifies all cases on `jobs` threads (0 means all cores). Rows come
/// back in input order.
pub fn verify_cases(cases: &[Case], opts: SearchOptions, jobs: usize) -> Vec<VerifyRow> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| cases.par_iter().map(|c| verify_case(c, opts)).collect())
}

/// CSV with header `class,params,expected,tag,measured,verdict`.
pub fn rows_to_csv(rows: &[VerifyRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// Whether any row lacks a pass, and whether any ran out of budget.
pub fn summarize(rows: &[VerifyRow]) -> (usize, bool) {
    let failed = rows.iter().filter(|r| r.verdict != Verdict::Pass).count();
    (failed, rows.iter().any(|r| r.budget_exceeded))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_catalogue_passes() {
        let cases = exact_catalogue(Limits::new(6, 3), 6);
        assert!(cases.len() > 50);
        let rows = verify_cases(&cases, SearchOptions::default(), 0);
        let bad: Vec<_> = rows.iter().filter(|r| r.verdict != Verdict::Pass).collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn csv_header() {
        let rows = verify_cases(
            &[Case::EgalStar { m: 5, n: 2 }],
            SearchOptions::default(),
            1,
        );
        let csv = rows_to_csv(&rows);
        assert_eq!(
            csv,
            "class,params,expected,tag,measured,verdict\negal-star,m=5 n=2,4,exact,4,pass\n"
        );
    }

    #[test]
    fn out_of_range_is_an_error_row() {
        let rows = verify_cases(
            &[Case::EgalStar { m: 2, n: 3 }],
            SearchOptions::default(),
            1,
        );
        assert_eq!(rows[0].verdict, Verdict::Error);
    }
}
