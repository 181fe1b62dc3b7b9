use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid vocabulary: {0}")]
    InvalidVocabulary(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("invalid class tuple: {0}")]
    InvalidClassTuple(String),

    #[error("profile sums to {actual}, expected {expected}")]
    ProfileSum { expected: usize, actual: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// CSV ingestion failure; `line` is 1-based and counts the header row.
    #[error("line {line}: {message}")]
    Ingest { line: u64, message: String },

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("variable x{0} is not assigned")]
    UnassignedVariable(u32),

    #[error("formula is not a sentence (free variables: {})", fmt_vars(.0))]
    NotSentence(Vec<u32>),

    #[error("quantifier rank {qrank} exceeds the counting threshold {d}")]
    QuantifierRank { qrank: usize, d: usize },

    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn fmt_vars(vars: &[u32]) -> String {
    vars.iter()
        .map(|v| format!("x{v}"))
        .collect::<Vec<_>>()
        .join(", ")
}
