//! File formats, random sampling and the verification pipeline behind the
//! `poc` binary.

mod catalogue;
mod graph_spec;
mod io;
mod pipeline;
pub mod random;
mod report;
mod search;

pub use catalogue::{
    exact_catalogue, lower_catalogue, measured_ratio, rows_to_csv, summarize, verify_case,
    verify_cases, Case, Limits, Verdict, VerifyRow, GENERATORS,
};
pub use graph_spec::{GraphSpec, GraphSpecError};
pub use io::{instance_to_json, parse_instance, InstanceFile, IoError};
pub use pipeline::{constructive_egal, Constructed, ConstructedSummary, PipelineError};
pub use report::{graph_report, GraphReport, TWO_LINKED_LIMIT};
pub use search::{
    generic_bound, search, KindOutcome, Sample, SampleSummary, SearchConfig, SearchOutcome,
};
