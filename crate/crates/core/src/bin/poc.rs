use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use poc_core::adversarial::{BoundTag, GraphClass};
use poc_core::harness::{
    constructive_egal, exact_catalogue, graph_report, instance_to_json, lower_catalogue,
    parse_instance, rows_to_csv, search, summarize, verify_cases, Case, GraphSpec, KindOutcome,
    Limits, PipelineError, SearchConfig, Verdict, GENERATORS,
};
use poc_core::oracle::{welfare_report, OracleError, SearchOptions, DEFAULT_BUDGET};
use poc_core::rational::format_rational;

/// Like `println!`, but a closed pipe ends output quietly.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! out_raw {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

const FAIL: u8 = 1;
const INPUT: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "poc",
    version,
    about = "Price of connectivity: exact solver, worst-case catalogue and sweeps"
)]
struct Cli {
    /// Search node budget for the exact oracle.
    #[arg(long, global = true, env = "POC_BUDGET")]
    budget: Option<u64>,
    /// Worker threads, 0 for one per core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Optima and welfare ratios of an instance file.
    Solve {
        file: PathBuf,
        /// Also run the constructive algorithm for the graph class.
        #[arg(long)]
        construct: bool,
    },
    /// Emit a worst-case instance from the catalogue.
    Generate(GenerateArgs),
    /// Generate, solve and compare against the formula table.
    Verify(VerifyArgs),
    /// Random instances on a graph class, looking for ratios above the table.
    Search(SearchArgs),
    /// Structural quantities and formula entries for a graph.
    Report {
        /// Graph spec such as path:5, cycle:6, star:5, complete:4,
        /// bipartite:2,3, cmm:6,2, spider:3,2, net, l5 or edges:3:0-1,1-2.
        graph: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

#[derive(Args)]
struct GenerateArgs {
    /// One of the generator names listed by `poc verify --list`.
    name: String,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Missing matching edges.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    x: Option<usize>,
    #[arg(long)]
    y: Option<usize>,
    #[arg(long)]
    c: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, alias = "tree")]
    graph: Option<String>,
    /// Unlinked pairs for egal-2linked, as a,b,c,d.
    #[arg(long, value_delimiter = ',')]
    pairs: Option<Vec<usize>>,
    /// Write the instance here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Generators to include; all when empty.
    names: Vec<String>,
    /// Item range, `a..b` inclusive or a single number.
    #[arg(long, default_value = "1..10")]
    m: String,
    /// Agent range.
    #[arg(long, default_value = "1..4")]
    n: String,
    /// Largest general graph enumerated for graph-parametrized generators.
    #[arg(long, default_value_t = 7)]
    graph_cap: usize,
    /// Also run the lower-bound witnesses for n in {2,3}, c in {1,2,3}, d in {0,1}.
    #[arg(long)]
    lower: bool,
    /// Print the generator names and exit.
    #[arg(long)]
    list: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// star, path, cycle, tree, cmm, bipartite, conn1, conn2 or generic.
    class: String,
    #[arg(long, default_value = "6")]
    m: String,
    /// Agent counts, comma separated.
    #[arg(long, default_value = "2", value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the worst egalitarian witness (or the first violation) here.
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure(u8, String);

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = if matches!(e, OracleError::BudgetExceeded(_)) {
            BUDGET
        } else {
            INPUT
        };
        Failure(code, e.to_string())
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure(INPUT, e.to_string())
}

fn range(s: &str) -> Result<(usize, usize), Failure> {
    let s = s.trim();
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| input(format!("bad range {s:?}: {e}")))
    };
    match s.split_once("..") {
        Some((a, b)) => Ok((parse(a)?, parse(b.trim_start_matches('='))?)),
        None => parse(s).map(|v| (v, v)),
    }
}

fn class(s: &str) -> Result<GraphClass, Failure> {
    Ok(match s {
        "star" => GraphClass::Star,
        "path" => GraphClass::Path,
        "cycle" => GraphClass::Cycle,
        "tree" => GraphClass::Tree,
        "cmm" => GraphClass::CompleteMinusMatching,
        "bipartite" => GraphClass::CompleteBipartite,
        "conn1" => GraphClass::Connectivity1,
        "conn2" => GraphClass::Connectivity2,
        "generic" => GraphClass::Generic,
        _ => return Err(input(format!("unknown class {s:?}"))),
    })
}

fn build_case(a: &GenerateArgs) -> Result<Case, Failure> {
    let need =
        |v: Option<usize>, flag: &str| v.ok_or_else(|| input(format!("{} needs --{flag}", a.name)));
    let graph = || -> Result<GraphSpec, Failure> {
        let s = a
            .graph
            .as_deref()
            .ok_or_else(|| input(format!("{} needs --graph", a.name)))?;
        s.parse().map_err(input)
    };
    Ok(match a.name.as_str() {
        "egal-cmm" => Case::EgalCmm {
            m: need(a.m, "m")?,
            k: need(a.k, "k")?,
        },
        "util-cmm" => Case::UtilCmm {
            m: need(a.m, "m")?,
            k: need(a.k, "k")?,
        },
        "egal-bipartite" => Case::EgalBipartite {
            x: need(a.x, "x")?,
            y: need(a.y, "y")?,
        },
        "util-bipartite" => Case::UtilBipartite {
            x: need(a.x, "x")?,
            y: need(a.y, "y")?,
        },
        "egal-2linked" => {
            let pairs = match &a.pairs {
                None => None,
                Some(p) => Some(
                    <[usize; 4]>::try_from(p.as_slice())
                        .map_err(|_| input("--pairs takes four vertices"))?,
                ),
            };
            Case::Egal2Linked {
                graph: graph()?,
                pairs,
            }
        }
        "egal-conn1" => Case::EgalConn1 { graph: graph()? },
        "egal-tree3" => Case::EgalTree3 { graph: graph()? },
        "util-tree" => Case::UtilTree { graph: graph()? },
        "egal-star" => Case::EgalStar {
            m: need(a.m, "m")?,
            n: need(a.n, "n")?,
        },
        "egal-path" => Case::EgalPath {
            m: need(a.m, "m")?,
            n: need(a.n, "n")?,
        },
        "egal-cycle" => Case::EgalCycle {
            m: need(a.m, "m")?,
            n: need(a.n, "n")?,
        },
        "util-cycle-2" => Case::UtilCycle2 { m: need(a.m, "m")? },
        "util-star-n" => Case::UtilStarN {
            n: need(a.n, "n")?,
            c: need(a.c, "c")?,
            d: need(a.d, "d")?,
        },
        "util-path-n" => Case::UtilPathN {
            n: need(a.n, "n")?,
            c: need(a.c, "c")?,
            d: need(a.d, "d")?,
        },
        "util-cycle-n" => Case::UtilCycleN {
            n: need(a.n, "n")?,
            c: need(a.c, "c")?,
            d: need(a.d, "d")?,
        },
        "util-path-m3" => Case::UtilPathM3 { n: need(a.n, "n")? },
        other => {
            return Err(input(format!(
                "unknown generator {other:?}; known: {}",
                GENERATORS.join(", ")
            )))
        }
    })
}

fn solve(cli: &Cli, opts: SearchOptions, file: &PathBuf, construct: bool) -> Result<(), Failure> {
    let text = fs::read_to_string(file).map_err(|e| input(format!("{}: {e}", file.display())))?;
    let inst = parse_instance(&text).map_err(|e| input(format!("{}: {e}", file.display())))?;
    let report = welfare_report(&inst, opts)?;
    let constructed = if construct {
        match constructive_egal(&inst, opts) {
            Ok(c) => Some(Ok(c)),
            Err(PipelineError::Oracle(e)) => return Err(e.into()),
            Err(e) => Some(Err(e.to_string())),
        }
    } else {
        None
    };
    let s = report.summary();
    if cli.json {
        let mut v = serde_json::to_value(&s).expect("plain data");
        if let Some(c) = &constructed {
            v["constructive"] = match c {
                Ok(c) => serde_json::to_value(c.summary()).expect("plain data"),
                Err(e) => json!({ "error": e }),
            };
        }
        out!("{}", serde_json::to_string_pretty(&v).expect("plain data"));
    } else {
        out!(
            "OPT-egal              {}  {:?}",
            s.opt_egal,
            s.witnesses.opt_egal
        );
        out!(
            "best connected egal   {}  {:?}",
            s.best_connected_egal,
            s.witnesses.best_connected_egal
        );
        out!(
            "OPT-util              {}  {:?}",
            s.opt_util,
            s.witnesses.opt_util
        );
        out!(
            "best connected util   {}  {:?}",
            s.best_connected_util,
            s.witnesses.best_connected_util
        );
        out!("egal ratio            {}", s.egal_ratio);
        out!("util ratio            {}", s.util_ratio);
        match &constructed {
            Some(Ok(c)) => out!(
                "constructive egal     {}  {:?}  via {} (factor {})",
                format_rational(&c.welfare),
                c.summary().bundles,
                c.algorithm,
                format_rational(&c.factor)
            ),
            Some(Err(e)) => out!("constructive egal     unavailable: {e}"),
            None => {}
        }
    }
    Ok(())
}

fn generate(cli: &Cli, a: &GenerateArgs) -> Result<(), Failure> {
    let case = build_case(a)?;
    let g = case.generate().map_err(input)?;
    let text = instance_to_json(&g.instance);
    let expected = format!(
        "expected {} ratio {} ({})",
        g.expected.kind,
        format_rational(&g.expected.value),
        g.expected.tag
    );
    match &a.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| input(format!("{}: {e}", path.display())))?;
            if cli.json {
                out!(
                    "{}",
                    serde_json::to_string_pretty(&g.expected).expect("plain data")
                );
            } else {
                out!("wrote {}; {expected}", path.display());
            }
        }
        None if cli.json => {
            let inst: serde_json::Value = serde_json::from_str(&text).expect("just written");
            let v = json!({ "instance": inst, "expected": g.expected });
            out!("{}", serde_json::to_string_pretty(&v).expect("plain data"));
        }
        None => {
            out_raw!("{text}");
            eprintln!("{expected}");
        }
    }
    Ok(())
}

fn verify(cli: &Cli, opts: SearchOptions, a: &VerifyArgs) -> Result<(), Failure> {
    if a.list {
        for g in GENERATORS {
            out!("{g}");
        }
        return Ok(());
    }
    for name in &a.names {
        if !GENERATORS.contains(&name.as_str()) {
            return Err(input(format!("unknown generator {name:?}")));
        }
    }
    let (min_m, max_m) = range(&a.m)?;
    let (min_n, max_n) = range(&a.n)?;
    let limits = Limits {
        min_m,
        max_m,
        min_n,
        max_n,
    };
    let mut cases = exact_catalogue(limits, a.graph_cap);
    if a.lower {
        cases.extend(lower_catalogue(&[2, 3], &[1, 2, 3], &[0, 1]));
    }
    cases.retain(|c| a.names.is_empty() || a.names.iter().any(|n| n == c.name()));
    let rows = verify_cases(&cases, opts, cli.jobs);
    if cli.json {
        out!(
            "{}",
            serde_json::to_string_pretty(&rows).expect("plain data")
        );
    } else if a.csv {
        out_raw!("{}", rows_to_csv(&rows));
    } else {
        for r in &rows {
            out!(
                "{:<5} {:<15} {:<40} expected {} ({}) measured {}",
                r.verdict,
                r.class,
                r.params,
                r.expected,
                r.tag,
                r.measured
            );
        }
    }
    let (failed, budget) = summarize(&rows);
    eprintln!(
        "{} cases, {} passed, {failed} not passed",
        rows.len(),
        rows.len() - failed
    );
    if budget {
        Err(Failure(BUDGET, "search budget exceeded".into()))
    } else if rows.iter().any(|r| r.verdict != Verdict::Pass) {
        Err(Failure(FAIL, format!("{failed} cases did not pass")))
    } else {
        Ok(())
    }
}

fn print_kind(label: &str, k: &KindOutcome) {
    match &k.worst {
        Some(w) => {
            let s = w.summary();
            let bound = match s.tag {
                BoundTag::Lower => format!("lower bound {}", s.formula),
                t => format!("{t} {}", s.formula),
            };
            out!(
                "{label}: worst ratio {} at sample {} (m={} n={}, {} {}), {} violations",
                s.ratio,
                s.index,
                s.m,
                s.n,
                s.formula_class,
                bound,
                k.violations.len()
            );
        }
        None => out!("{label}: no samples"),
    }
}

fn run_search(cli: &Cli, opts: SearchOptions, a: &SearchArgs) -> Result<(), Failure> {
    let (min_m, max_m) = range(&a.m)?;
    if min_m == 0 || min_m > max_m || a.n.is_empty() || a.n.contains(&0) {
        return Err(input("need 1 <= min m <= max m and positive agent counts"));
    }
    let cfg = SearchConfig {
        class: class(&a.class)?,
        min_m,
        max_m,
        agents: a.n.clone(),
        samples: a.samples,
        seed: a.seed,
    };
    let out = search(&cfg, opts)?;
    if cli.json {
        let kind = |k: &KindOutcome| {
            json!({
                "worst": k.worst.as_ref().map(|w| w.summary()),
                "violations": k.violations.iter().map(|v| v.summary()).collect::<Vec<_>>(),
            })
        };
        let v = json!({ "samples": out.samples, "egal": kind(&out.egal), "util": kind(&out.util) });
        out!("{}", serde_json::to_string_pretty(&v).expect("plain data"));
    } else {
        out!("{} samples", out.samples);
        print_kind("egal", &out.egal);
        print_kind("util", &out.util);
    }
    let first_violation = out.egal.violations.first().or(out.util.violations.first());
    if let Some(path) = &a.out {
        let witness = first_violation.or(out.egal.worst.as_ref());
        if let Some(w) = witness {
            fs::write(path, instance_to_json(&w.instance))
                .map_err(|e| input(format!("{}: {e}", path.display())))?;
        }
    }
    match first_violation {
        Some(v) => Err(Failure(
            FAIL,
            format!(
                "counterexample at sample {}:\n{}",
                v.index,
                instance_to_json(&v.instance)
            ),
        )),
        None => Ok(()),
    }
}

fn report(cli: &Cli, spec: &str, n: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(input("--n must be positive"));
    }
    let spec: GraphSpec = spec.parse().map_err(input)?;
    let g = spec.build().map_err(input)?;
    let r = graph_report(&g, n);
    if cli.json {
        out!("{}", serde_json::to_string_pretty(&r).expect("plain data"));
        return Ok(());
    }
    let opt = |o: Option<usize>| o.map_or("-".to_string(), |v| v.to_string());
    out!("graph {spec}: {} vertices, {} edges", r.vertices, r.edges);
    out!(
        "connectivity {}, d {}, two-removal {}, delta {}",
        r.connectivity,
        r.d,
        opt(r.d2),
        opt(r.delta)
    );
    out!(
        "cut vertices {:?}, block-cut tree is a path: {}",
        r.cut_vertices,
        r.block_cut_tree_is_path
    );
    match &r.bipolar_ordering {
        Some(o) => out!("bipolar ordering {o:?}"),
        None => out!("bipolar ordering none"),
    }
    out!(
        "2-linked {}",
        r.two_linked
            .map_or("not checked".to_string(), |b| b.to_string())
    );
    for f in [&r.egal, &r.util] {
        out!(
            "{} PoC with {n} agents: {} {} ({}, {})",
            f.kind,
            f.tag,
            format_rational(&f.value),
            f.class,
            f.describe_params()
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .ok();
    }
    let opts = SearchOptions::with_budget(cli.budget.unwrap_or(DEFAULT_BUDGET));
    let result = match &cli.cmd {
        Cmd::Solve { file, construct } => solve(&cli, opts, file, *construct),
        Cmd::Generate(a) => generate(&cli, a),
        Cmd::Verify(a) => verify(&cli, opts, a),
        Cmd::Search(a) => run_search(&cli, opts, a),
        Cmd::Report { graph, n } => report(&cli, graph, *n),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
