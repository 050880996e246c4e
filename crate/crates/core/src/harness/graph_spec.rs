use std::fmt;
use std::str::FromStr;

use crate::graph::{Graph, GraphError};

/// A named graph family member, written `family:args` on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GraphSpec {
    Path(usize),
    Cycle(usize),
    Star(usize),
    Complete(usize),
    Bipartite(usize, usize),
    /// `K_m` minus a matching of `k` edges.
    Cmm(usize, usize),
    Spider(usize, usize),
    /// Triangle with one pendant vertex on each corner.
    Net,
    /// `K_5` minus two disjoint edges.
    L5,
    Edges(usize, Vec<(usize, usize)>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphSpecError {
    #[error("unknown graph family {0:?}; expected path, cycle, star, complete, bipartite, cmm, spider, net, l5 or edges")]
    UnknownFamily(String),
    #[error("bad arguments for {family}: {detail}")]
    BadArgs { family: String, detail: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph, GraphError> {
        match *self {
            GraphSpec::Path(m) => Graph::path(m),
            GraphSpec::Cycle(m) => Graph::cycle(m),
            GraphSpec::Star(m) => Graph::star(m),
            GraphSpec::Complete(m) => Graph::complete(m),
            GraphSpec::Bipartite(x, y) => Graph::complete_bipartite(x, y),
            GraphSpec::Cmm(m, k) => Graph::complete_minus_matching(m, k),
            GraphSpec::Spider(l, len) => Graph::spider(l, len),
            GraphSpec::Net => Graph::new(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]),
            GraphSpec::L5 => Graph::complete_minus_matching(5, 2),
            GraphSpec::Edges(m, ref e) => Graph::new(m, e),
        }
    }

    /// Spec listing the edges of an arbitrary graph.
    pub fn from_graph(g: &Graph) -> Self {
        GraphSpec::Edges(g.vertex_count(), g.edges())
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Path(m) => write!(f, "path:{m}"),
            GraphSpec::Cycle(m) => write!(f, "cycle:{m}"),
            GraphSpec::Star(m) => write!(f, "star:{m}"),
            GraphSpec::Complete(m) => write!(f, "complete:{m}"),
            GraphSpec::Bipartite(x, y) => write!(f, "bipartite:{x},{y}"),
            GraphSpec::Cmm(m, k) => write!(f, "cmm:{m},{k}"),
            GraphSpec::Spider(l, len) => write!(f, "spider:{l},{len}"),
            GraphSpec::Net => f.write_str("net"),
            GraphSpec::L5 => f.write_str("l5"),
            GraphSpec::Edges(m, e) => {
                write!(f, "edges:{m}:")?;
                let parts: Vec<String> = e.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

fn numbers(family: &str, args: &str, count: usize) -> Result<Vec<usize>, GraphSpecError> {
    let bad = |detail: String| GraphSpecError::BadArgs {
        family: family.to_string(),
        detail,
    };
    let vals = args
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|e| bad(format!("{s:?}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if vals.len() != count {
        return Err(bad(format!("expected {count} numbers, got {}", vals.len())));
    }
    Ok(vals)
}

impl FromStr for GraphSpec {
    type Err = GraphSpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (family, args) = s.split_once(':').unwrap_or((s, ""));
        let family = family.to_ascii_lowercase();
        let one =
            |f: fn(usize) -> GraphSpec| Ok::<_, GraphSpecError>(f(numbers(&family, args, 1)?[0]));
        let two = |f: fn(usize, usize) -> GraphSpec| {
            let v = numbers(&family, args, 2)?;
            Ok::<_, GraphSpecError>(f(v[0], v[1]))
        };
        let spec = match family.as_str() {
            "path" => one(GraphSpec::Path)?,
            "cycle" => one(GraphSpec::Cycle)?,
            "star" => one(GraphSpec::Star)?,
            "complete" => one(GraphSpec::Complete)?,
            "bipartite" => two(GraphSpec::Bipartite)?,
            "cmm" => two(GraphSpec::Cmm)?,
            "spider" => two(GraphSpec::Spider)?,
            "net" => GraphSpec::Net,
            "l5" => GraphSpec::L5,
            "edges" => {
                let (m, list) = args.split_once(':').unwrap_or((args, ""));
                let m = numbers(&family, m, 1)?[0];
                let mut edges = Vec::new();
                for e in list.split(',').filter(|e| !e.trim().is_empty()) {
                    let (a, b) = e.split_once('-').ok_or_else(|| GraphSpecError::BadArgs {
                        family: family.clone(),
                        detail: format!("edge {e:?} is not of the form a-b"),
                    })?;
                    let v = numbers(&family, &format!("{a},{b}"), 2)?;
                    edges.push((v[0], v[1]));
                }
                GraphSpec::Edges(m, edges)
            }
            _ => return Err(GraphSpecError::UnknownFamily(family)),
        };
        spec.build()?;
        Ok(spec)
    }
}
