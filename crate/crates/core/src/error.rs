use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed graph6 input: {0}")]
    Graph6(String),

    #[error("malformed edge list at line {line}: {reason}")]
    EdgeList { line: usize, reason: String },

    #[error("invalid multipartite signature: {0}")]
    Signature(String),

    #[error("graph has {n} vertices, above the configured maximum of {max}")]
    TooLarge { n: usize, max: usize },

    #[error("the zero polynomial has no roots or factorization")]
    ZeroPolynomial,

    #[error("operation is undefined for the complete graph K_{0}")]
    CompleteGraph(usize),

    #[error("infeasible configuration: {0}")]
    Infeasible(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("comparison undecidable after maximal refinement: enclosure [{lo}, {hi}] straddles {target}")]
    Undecidable { lo: f64, hi: f64, target: f64 },

    #[error("geometric inconsistency: {0}")]
    Geometry(String),
}

pub type Result<T> = std::result::Result<T, Error>;
