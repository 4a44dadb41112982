//! File formats, the `latclust` command-line pipeline and the HTTP browsing
//! service around [`latclust_core`].
//!
//! Pipeline artifacts:
//!
//! | stage  | artifact                 | module                |
//! |--------|--------------------------|-----------------------|
//! | mine   | lattice JSON, `L2SO` store | [`lattice_json`], [`store`] |
//! | group  | grouping JSON            | [`grouping_json`]     |
//! | embed  | model JSON, error curve  | [`model_json`], [`tables`] |
//! | render | SVG, edge CSV            | [`export`]            |

pub mod cli;
pub mod export;
pub mod grouping_json;
pub mod gspan;
pub mod lattice_json;
pub mod model_json;
pub mod pipeline;
pub mod service;
pub mod store;
pub mod tables;

use latclust_core::graph::GraphError;
use latclust_core::occ::OccError;
use latclust_core::pregroup::GroupingError;
use latclust_core::render::RenderError;
use latclust_core::{DistanceError, LatticeError, MineError};

/// A file whose content does not match its format or breaks an invariant.
#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("binary store: {0}")]
    Binary(String),
    #[error("{0}")]
    Invalid(String),
    #[error("graph: {0}")]
    Graph(#[from] GraphError),
    #[error("occurrences: {0}")]
    Occurrences(#[from] OccError),
    #[error("lattice: {0}")]
    Lattice(#[from] LatticeError),
    #[error("grouping: {0}")]
    Grouping(#[from] GroupingError),
    #[error("distance: {0}")]
    Distance(#[from] DistanceError),
    #[error("render: {0}")]
    Render(#[from] RenderError),
    #[error("mining: {0}")]
    Mine(#[from] MineError),
}

/// Pretty JSON with a trailing newline; the layout is fixed so artifacts are
/// byte-stable.
pub(crate) fn to_json<T: serde::Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
