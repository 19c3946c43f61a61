use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what}: {size} vertices exceeds the exact-solver cap of {cap}")]
    ResourceLimit {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    #[error("no {p}-rock exists: no nonempty vertex set spans at least {p} edges per vertex")]
    NoRock { p: u64 },

    #[error("partition search exhausted after {tries} tries")]
    PartitionExhausted { tries: u64 },

    #[error("index family C({k}, {half}) exceeds the exhaustive-check cap of {cap}")]
    FamilyTooLarge { k: usize, half: usize, cap: u128 },

    #[error("sets overlap at vertex {0}")]
    Overlap(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("campaign file: {0}")]
    Campaign(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("vertex index {index} out of range 1..={n}")]
    OutOfRange { index: usize, n: usize },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("missing header")]
    MissingHeader,
    #[error("header declares {declared} edges but {found} were read")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("not a tournament: {0}")]
    NotTournament(String),
}
