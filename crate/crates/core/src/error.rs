use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    Distribution(String),
    #[error("invalid term: {0}")]
    Term(String),
    #[error("invalid recurrence: {0}")]
    InvalidRecurrence(String),
    #[error("table of {cells} cells exceeds the cap of {cap} cells")]
    CellCap { cells: u128, cap: u128 },
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("invalid rule: {0}")]
    InvalidRule(String),
    #[error("tolerance {tol:e} not reached (gap {gap:e})")]
    Tolerance { tol: f64, gap: f64 },
    #[error("infinite branching number for term {0}")]
    InfiniteRate(usize),
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("invalid hypergraph: {0}")]
    Hypergraph(String),
    #[error("missing configuration: {0}")]
    Config(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("catalog miss for neighbourhood of vertex {0}")]
    CatalogMiss(usize),
    #[error("certain failure: success probability bound is zero")]
    CertainFailure,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
