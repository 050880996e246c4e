//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use poc_core::adversarial::GraphClass;
use poc_core::constructive::{
    alg1_connectivity1_2, bipolar_split_2, moving_knife_path, tree_3_allocation,
    util_cycle_best_arc_2, util_tree_best_edge_2,
};
use poc_core::graph::enumerate::{connected_graphs, trees};
use poc_core::graph::{
    bipolar_ordering, delta_formula, is_bipolar_ordering, is_two_linked, is_two_linked_pairs,
    vertex_connectivity, Graph,
};
use poc_core::harness::random::{
    random_class_graph, random_connected_graph, random_disjoint_instance, random_instance,
    random_tree, seeded,
};
use poc_core::harness::{
    exact_catalogue, lower_catalogue, parse_instance, search, verify_cases, Limits, SearchConfig,
    Verdict,
};
use poc_core::instance::{util_welfare, Instance};
use poc_core::oracle::{
    best_connected_egal, best_connected_util, count_connected_allocations, opt_egal_unconstrained,
    opt_util_unconstrained, welfare_report, SearchOptions,
};
use poc_core::rational::{format_rational as f, frac, int, Rational};
use rand::Rng;

/// Wall-clock limits, pinned.
const SMALL_SOLVE_LIMIT: Duration = Duration::from_secs(1);
const CATALOGUE_LIMIT: Duration = Duration::from_secs(300);
/// Largest general graph enumerated for the graph-parametrized generators.
const CATALOGUE_GRAPH_CAP: usize = 8;
const SWEEP_SAMPLES: usize = 500;
const GENERIC_SAMPLES: usize = 1000;
const CONSTRUCTIVE_SAMPLES: usize = 200;
const ORACLE_SAMPLES: usize = 150;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn opts() -> SearchOptions {
    SearchOptions::default()
}

fn criterion_1() -> Outcome {
    let text = include_str!("../examples/data/pendant_triangle.json");
    let start = Instant::now();
    let inst = parse_instance(text).map_err(|e| e.to_string())?;
    let r = welfare_report(&inst, opts()).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let got = [
        r.opt_egal.value,
        r.best_connected_egal.value,
        r.opt_util.value,
        r.best_connected_util.value,
        r.egal_ratio,
        r.util_ratio,
    ];
    let want = [
        frac(4, 5),
        frac(1, 2),
        frac(17, 10),
        frac(7, 5),
        frac(8, 5),
        frac(17, 14),
    ];
    check(got == want, || format!("got {:?}", got.map(|x| f(&x))))?;
    check(took < SMALL_SOLVE_LIMIT, || format!("took {took:?}"))?;
    Ok(format!(
        "4/5, 1/2, 17/10, 7/5, ratios 8/5 and 17/14 in {took:.2?}"
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let cases = exact_catalogue(Limits::new(10, 4), CATALOGUE_GRAPH_CAP);
    let rows = verify_cases(&cases, opts(), 0);
    let took = start.elapsed();
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| r.verdict != Verdict::Pass)
        .map(|r| {
            format!(
                "{} {}: expected {} measured {}",
                r.class, r.params, r.expected, r.measured
            )
        })
        .collect();
    check(bad.is_empty(), || {
        format!("{} failures, first: {}", bad.len(), bad[0])
    })?;
    check(rows.iter().all(|r| r.tag == "exact"), || {
        "non-exact entry in the catalogue".into()
    })?;
    // spot values named in the criterion
    let find = |class: &str, params: &str| {
        rows.iter()
            .find(|r| r.class == class && r.params == params)
            .map(|r| r.measured.clone())
            .unwrap_or_default()
    };
    let named = [
        ("egal-cmm", "m=3 k=1", "2"),
        ("egal-cmm", "m=5 k=2", "2"),
        ("egal-cmm", "m=6 k=3", "4/3"),
        ("egal-bipartite", "x=3 y=4", "3/2"),
        ("egal-star", "m=7 n=3", "5"),
        ("egal-cycle", "m=9 n=3", "3"),
        ("util-cmm", "m=3 k=1", "4/3"),
        ("util-cmm", "m=5 k=2", "4/3"),
        ("util-cmm", "m=7 k=1", "10/9"),
        ("util-cycle-2", "m=6", "3/2"),
        ("util-path-m3", "n=4", "4/3"),
    ];
    for (class, params, want) in named {
        let got = find(class, params);
        check(got == want, || {
            format!("{class} {params}: measured {got:?}, expected {want}")
        })?;
    }
    check(took < CATALOGUE_LIMIT, || format!("took {took:?}"))?;
    Ok(format!(
        "{} exact cases equal their formula in {took:.1?}",
        rows.len()
    ))
}

fn criterion_3() -> Outcome {
    use GraphClass::*;
    let classes = [
        (CompleteMinusMatching, 3),
        (CompleteBipartite, 2),
        (Connectivity2, 4),
        (Connectivity1, 3),
        (Tree, 2),
        (Star, 2),
        (Path, 2),
        (Cycle, 3),
    ];
    let mut total = 0;
    let mut run = |class,
                   min_m,
                   agents: Vec<usize>,
                   samples,
                   seed|
     -> Result<Vec<poc_core::harness::Sample>, String> {
        let cfg = SearchConfig {
            class,
            min_m,
            max_m: 8,
            agents,
            samples,
            seed,
        };
        let out = search(&cfg, opts()).map_err(|e| e.to_string())?;
        check(out.samples == samples, || {
            format!("{class}: only {} samples drawn", out.samples)
        })?;
        let v: Vec<_> = out
            .egal
            .violations
            .iter()
            .chain(&out.util.violations)
            .cloned()
            .collect();
        check(v.is_empty(), || {
            let s = &v[0];
            format!(
                "{class}: sample {} has {} ratio {} above {}",
                s.index,
                s.formula.kind,
                f(&s.ratio),
                f(&s.formula.value)
            )
        })?;
        total += samples;
        Ok(out.util.worst.into_iter().collect())
    };
    for (seed, (class, min_m)) in classes.into_iter().enumerate() {
        run(class, min_m, vec![2, 3], SWEEP_SAMPLES, seed as u64)?;
    }
    // generic bounds m − n + 1 and n on arbitrary connected graphs
    run(Generic, 1, vec![2, 3], GENERIC_SAMPLES, 100)?;
    // n − 1/(nm) with three agents
    for (i, class) in [Star, Path, Cycle].into_iter().enumerate() {
        let worst = run(class, 3, vec![3], SWEEP_SAMPLES, 200 + i as u64)?;
        for w in worst {
            let m = w.instance.item_count() as i128;
            check(w.ratio <= int(3) - frac(1, 3 * m), || {
                format!("{class}: util ratio {} with m={m}", f(&w.ratio))
            })?;
        }
    }
    Ok(format!(
        "{total} random instances, no ratio above its bound"
    ))
}

fn criterion_4() -> Outcome {
    let cases = lower_catalogue(&[2, 3], &[1, 2, 3], &[0, 1]);
    let rows = verify_cases(&cases, opts(), 0);
    let bad: Vec<_> = rows.iter().filter(|r| r.verdict != Verdict::Pass).collect();
    check(bad.is_empty(), || format!("{bad:?}"))?;
    check(rows.iter().all(|r| r.tag == "lower"), || {
        "expected lower-bound tags".into()
    })?;
    Ok(format!(
        "{} witnesses meet their finite lower bounds (star with n=2, d=1 is outside its range)",
        rows.len()
    ))
}

/// Disjoint-valued instance where every agent has positive total.
fn disjoint_positive<R: Rng>(rng: &mut R, g: &Graph, n: usize) -> Instance {
    loop {
        let inst = random_disjoint_instance(rng, g, n, 0.2);
        if (0..n).all(|i| inst.total(i) > int(0)) {
            return inst;
        }
    }
}

fn floors_met(inst: &Instance, a: &poc_core::instance::Allocation, divisor: &[Rational]) -> bool {
    common::is_connected_allocation(inst, a)
        && (0..inst.agent_count()).all(|i| {
            let mask: Vec<bool> = (0..inst.item_count())
                .map(|v| a.bundles[i].contains(v))
                .collect();
            common::utility_of(inst, i, &mask) * divisor[i] >= inst.total(i)
        })
}

fn criterion_5() -> Outcome {
    let mut rng = seeded(5);
    let k = CONSTRUCTIVE_SAMPLES;
    let d_of = |g: &Graph| {
        let adj = common::adjacency(g);
        (0..g.vertex_count())
            .map(|v| common::components_without(&adj, &[v]))
            .max()
            .unwrap()
    };
    // Algorithm 1 on trees and on graphs with a cut vertex
    for round in 0..2 * k {
        let m = rng.gen_range(3..=10);
        let g = if round < k {
            random_tree(&mut rng, m)
        } else {
            random_class_graph(&mut rng, GraphClass::Connectivity1, m).unwrap()
        };
        let inst = disjoint_positive(&mut rng, &g, 2);
        let gamma = int(d_of(&g).max(3) as i128);
        let a = alg1_connectivity1_2(&inst).map_err(|e| format!("algorithm 1: {e}"))?;
        check(floors_met(&inst, &a, &[gamma, gamma]), || {
            format!("algorithm 1 on {:?}", g.edges())
        })?;
    }
    // Algorithms 2-3 with subtree division, three agents on trees
    for _ in 0..k {
        let m = rng.gen_range(5..=10);
        let g = random_tree(&mut rng, m);
        let inst = disjoint_positive(&mut rng, &g, 3);
        let delta = int(common::brute_two_removal(&g) as i128);
        let a = tree_3_allocation(&inst).map_err(|e| format!("tree, three agents: {e}"))?;
        check(floors_met(&inst, &a, &[delta; 3]), || {
            format!("tree allocation on {:?}", g.edges())
        })?;
    }
    // moving knife on paths, target OPT/n
    for _ in 0..k {
        let m = rng.gen_range(2..=10);
        let n = rng.gen_range(2..=4);
        let g = Graph::path(m).unwrap();
        let inst = random_disjoint_instance(&mut rng, &g, n, 0.2);
        let opt = (0..n).map(|i| inst.total(i)).min().unwrap();
        let target = opt / int(n as i128);
        let a = moving_knife_path(&inst, target).map_err(|e| format!("moving knife: {e}"))?;
        let ok = common::is_connected_allocation(&inst, &a)
            && (0..n).all(|i| {
                let mask: Vec<bool> = (0..m).map(|v| a.bundles[i].contains(v)).collect();
                common::utility_of(&inst, i, &mask) >= target
            });
        check(ok, || {
            format!("moving knife below {} on m={m} n={n}", f(&target))
        })?;
    }
    // bipolar split on connectivity-2 graphs
    for _ in 0..k {
        let m = rng.gen_range(4..=9);
        let g = random_class_graph(&mut rng, GraphClass::Connectivity2, m).unwrap();
        let ord = bipolar_ordering(&g).ok_or("connectivity-2 graph without a bipolar ordering")?;
        let inst = disjoint_positive(&mut rng, &g, 2);
        let a = bipolar_split_2(&inst, &ord).map_err(|e| format!("bipolar split: {e}"))?;
        check(floors_met(&inst, &a, &[int(2), int(2)]), || {
            format!("bipolar split on {:?}", g.edges())
        })?;
    }
    Ok(format!(
        "{} instances, every floor met and every bundle connected",
        5 * k
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = seeded(6);
    for s in 0..ORACLE_SAMPLES {
        let m = rng.gen_range(1..=7);
        let n = rng.gen_range(1..=3);
        let p = rng.gen_range(0.0..0.6);
        let g = random_connected_graph(&mut rng, m, p);
        let inst = random_instance(&mut rng, &g, n, [0.0, 0.4, 0.7][s % 3]);
        let naive = common::naive(&inst);
        let e = |x: Result<poc_core::oracle::Optimum, _>| {
            x.map(|o| o.value)
                .map_err(|e: poc_core::oracle::OracleError| e.to_string())
        };
        let got = (
            e(best_connected_egal(&inst, opts()))?,
            e(best_connected_util(&inst, opts()))?,
            e(opt_egal_unconstrained(&inst, opts()))?,
            opt_util_unconstrained(&inst).value,
            count_connected_allocations(&g, n, u64::MAX).map_err(|e| e.to_string())?,
        );
        let want = (
            naive.connected_egal,
            naive.connected_util,
            naive.egal,
            naive.util,
            naive.connected_count,
        );
        check(got == want, || {
            format!("sample {s} (m={m}, n={n}): {got:?} vs {want:?}")
        })?;
    }
    let mut scans = 0;
    let tree_list: Vec<Graph> = trees(10)
        .into_iter()
        .filter(|t| t.vertex_count() >= 2)
        .collect();
    let cycles: Vec<Graph> = (3..=10).map(|m| Graph::cycle(m).unwrap()).collect();
    for (g, is_tree) in tree_list
        .iter()
        .map(|t| (t, true))
        .chain(cycles.iter().map(|c| (c, false)))
    {
        for _ in 0..3 {
            let inst = random_instance(&mut rng, g, 2, 0.3);
            let a = if is_tree {
                util_tree_best_edge_2(&inst)
            } else {
                util_cycle_best_arc_2(&inst)
            }
            .map_err(|e| e.to_string())?;
            let best = best_connected_util(&inst, opts())
                .map_err(|e| e.to_string())?
                .value;
            check(util_welfare(&inst, &a) == best, || {
                format!("scan differs on {:?}", g.edges())
            })?;
            scans += 1;
        }
    }
    Ok(format!("{ORACLE_SAMPLES} instances match naive enumeration; {scans} tree/cycle scans match the oracle"))
}

fn criterion_7() -> Outcome {
    let all_trees = trees(9);
    for t in all_trees.iter().filter(|t| t.vertex_count() >= 3) {
        let d = delta_formula(t).map_err(|e| e.to_string())?;
        check(d == common::brute_two_removal(t), || {
            format!("delta differs on {:?}", t.edges())
        })?;
    }
    let l5 = Graph::complete_minus_matching(5, 2).unwrap();
    let linked = is_two_linked_pairs(&l5, 0, 1, 2, 3).map_err(|e| e.to_string())?;
    check(!linked && !is_two_linked(&l5), || {
        "L5 pairs (0,1), (2,3) are linked".into()
    })?;
    let mut count = 0;
    for g in connected_graphs(8)
        .iter()
        .filter(|g| g.vertex_count() >= 4 && vertex_connectivity(g) == 2)
    {
        check(!is_two_linked(g), || format!("2-linked: {:?}", g.edges()))?;
        let ok = bipolar_ordering(g).is_some_and(|o| is_bipolar_ordering(g, &o));
        check(ok, || format!("no valid bipolar ordering: {:?}", g.edges()))?;
        count += 1;
    }
    Ok(format!(
        "delta matches on {} trees; L5 not 2-linked; {count} connectivity-2 graphs checked",
        all_trees.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("small instance reproduction", criterion_1),
        ("exact catalogue", criterion_2),
        ("upper-bound sweeps", criterion_3),
        ("lower-bound witnesses", criterion_4),
        ("constructive guarantees", criterion_5),
        ("oracle self-consistency", criterion_6),
        ("structural algorithms", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail} [{took:.1?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {why} [{took:.1?}]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
