//! The JSON instance file format.
//!
//! ```json
//! {"m": 3, "n": 2, "edges": [[0, 1], [1, 2]],
//!  "utilities": [["1/2", "0", "1/2"], ["0", "1", "0"]], "normalized": true}
//! ```

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphError};
use crate::instance::{Instance, InstanceError};
use crate::rational::{format_rational, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub m: usize,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub utilities: Vec<Vec<String>>,
    pub normalized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field {field}: {message}")]
    Field { field: String, message: String },
    #[error("field edges: {0}")]
    Graph(GraphError),
    #[error(transparent)]
    Instance(InstanceError),
}

fn field(field: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Field {
        field: field.into(),
        message: message.into(),
    }
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        InstanceFile {
            m: inst.item_count(),
            n: inst.agent_count(),
            edges: inst
                .graph()
                .edges()
                .into_iter()
                .map(|(a, b)| [a, b])
                .collect(),
            utilities: inst
                .utilities()
                .iter()
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
            normalized: inst.is_normalized(),
        }
    }

    pub fn to_instance(&self) -> Result<Instance, IoError> {
        if self.utilities.len() != self.n {
            return Err(field(
                "utilities",
                format!("{} rows for n = {}", self.utilities.len(), self.n),
            ));
        }
        let mut rows = Vec::with_capacity(self.n);
        for (i, row) in self.utilities.iter().enumerate() {
            if row.len() != self.m {
                return Err(field(
                    format!("utilities[{i}]"),
                    format!("{} entries for m = {}", row.len(), self.m),
                ));
            }
            let parsed = row
                .iter()
                .enumerate()
                .map(|(v, s)| {
                    parse_rational(s)
                        .map_err(|e| field(format!("utilities[{i}][{v}]"), e.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(parsed);
        }
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[a, b]| (a, b)).collect();
        let g = Graph::new(self.m, &edges).map_err(IoError::Graph)?;
        Instance::new(g, rows, self.normalized).map_err(IoError::Instance)
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, IoError> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| {
        // serde_json appends its own " at line L column C"
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        IoError::Syntax {
            line: e.line(),
            column: e.column(),
            message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
        }
    })?;
    file.to_instance()
}

/// Pretty-printed JSON with a trailing newline.
pub fn instance_to_json(inst: &Instance) -> String {
    let mut s =
        serde_json::to_string_pretty(&InstanceFile::from_instance(inst)).expect("plain data");
    s.push('\n');
    s
}
