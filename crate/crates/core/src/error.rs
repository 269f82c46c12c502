use thiserror::Error;

use crate::instance::Violation;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown identifier `{0}`")]
    UnknownId(String),
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(String, String),
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("invalid instance: {}", format_violations(.0))]
    InvalidInstance(Vec<Violation>),
    #[error("instance is not in tree form: {0}")]
    NotTreeForm(String),
    #[error("order is not a permutation of the leaves: {0}")]
    NotAPermutation(String),
    #[error("search budget exceeded: {leaves} leaves, cap is {cap}")]
    SearchBudgetExceeded { leaves: usize, cap: usize },
    #[error("gadget map does not match the clustered graph: {0}")]
    GadgetMismatch(String),
    #[error("placement rejected by verifier: {0}")]
    PlacementFailed(String),
    #[error("leaf-path of `{leaf}` crosses the alpha region boundary {crossings} times")]
    MalformedCrossing { leaf: String, crossings: usize },
    #[error("order is not certified for this instance")]
    NotCertified,
    #[error("oracle cap exceeded: {0}")]
    OracleCap(String),
    #[error("bad rational `{0}`")]
    BadRational(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
