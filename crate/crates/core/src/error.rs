use thiserror::Error;

use crate::somp::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("universe must contain at least one point")]
    EmptyUniverse,

    #[error("universe of {universe_size} points exceeds the supported maximum of {max}")]
    UniverseTooLarge { universe_size: usize, max: usize },

    #[error("event {event} has length {found}, expected {expected}")]
    LengthMismatch {
        event: String,
        expected: usize,
        found: usize,
    },

    #[error("point {point} is outside a universe of {universe_size} points")]
    PointOutOfRange { point: usize, universe_size: usize },

    #[error("family violates the orthomodular poset axioms: {}", summarize(.0))]
    InvalidFamily(Vec<Violation>),

    #[error("duplicate event {0}")]
    DuplicateEvent(String),

    #[error("closure exceeded the cap of {cap} events")]
    CapExceeded { cap: usize },

    #[error("invalid big-sets family: {0}")]
    InvalidBigsets(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("more than {limit} two-valued states")]
    LimitExceeded { limit: usize },

    #[error("value vector is not a two-valued state: {0}")]
    NotAState(String),

    #[error("family is not closed under symmetric difference: {a} \u{25b3} {b} is missing")]
    NotDeltaClosed { a: String, b: String },

    #[error("state set is not separating: no state is 1 on {a} and 0 on {b}")]
    NotSeparating { a: String, b: String },

    #[error("mapping is not an orthomodular poset morphism ({0} violations)")]
    NotAMorphism(usize),

    #[error("malformed morphism table: {0}")]
    MalformedTable(String),

    #[error("isomorphism search exceeded its budget of {budget} nodes")]
    BudgetExceeded { budget: u64 },

    #[error("hash mismatch: document refers to {expected}, supplied structure hashes to {found}")]
    HashMismatch { expected: String, found: String },

    #[error("malformed document: {0}")]
    Malformed(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable variant name, used by the CLI on its diagnostic stream.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyUniverse => "EmptyUniverse",
            Error::UniverseTooLarge { .. } => "UniverseTooLarge",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::PointOutOfRange { .. } => "PointOutOfRange",
            Error::InvalidFamily(_) => "InvalidFamily",
            Error::DuplicateEvent(_) => "DuplicateEvent",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::InvalidBigsets(_) => "InvalidBigsets",
            Error::InvalidPartition(_) => "InvalidPartition",
            Error::LimitExceeded { .. } => "LimitExceeded",
            Error::NotAState(_) => "NotAState",
            Error::NotDeltaClosed { .. } => "NotDeltaClosed",
            Error::NotSeparating { .. } => "NotSeparating",
            Error::NotAMorphism(_) => "NotAMorphism",
            Error::MalformedTable(_) => "MalformedTable",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::HashMismatch { .. } => "HashMismatch",
            Error::Malformed(_) => "Malformed",
            Error::Json(_) => "Json",
        }
    }
}

fn summarize(v: &[Violation]) -> String {
    let mut parts: Vec<String> = v.iter().take(3).map(|x| x.to_string()).collect();
    if v.len() > 3 {
        parts.push(format!("and {} more", v.len() - 3));
    }
    parts.join(", ")
}
