use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("incompatible congruences at positions {i} and {j}")]
    Incompatible { i: usize, j: usize },
    #[error("out of domain: {0}")]
    Domain(String),
    #[error("grid function has no value at {0} node(s): {1}")]
    MissingValues(usize, String),
    #[error("grid function has duplicate values at: {0}")]
    DuplicateValues(String),
    #[error("grid function has values at indices outside the node set: {0}")]
    ExtraValues(String),
    #[error("grid functions belong to different node sets")]
    DomainMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn list_indices(idx: &[Vec<usize>]) -> String {
    const SHOWN: usize = 8;
    let mut parts: Vec<String> = idx
        .iter()
        .take(SHOWN)
        .map(|i| format!("({})", i.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    if idx.len() > SHOWN {
        parts.push(format!("... {} more", idx.len() - SHOWN));
    }
    parts.join(" ")
}
